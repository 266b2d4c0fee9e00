#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chemlat/harness.hpp"

namespace chemlat {

struct CheckResult {
  std::string id;
  std::string description;
  bool pass = false;
  std::string detail;
};

// Visits to 1 and N alternate, and active_count is 0 while aggregating
// and N while fragmenting. Needs at least two full cycles.
CheckResult check_oscillation(const RunSeries& series, std::uint32_t n_molecules);

// After the first full aggregation cluster_count never reaches N again.
CheckResult check_lock_in(const RunSeries& series, std::uint32_t n_molecules);

// At least `min_spikes` spikes of amplitude >= 0.8 N, both directions present.
CheckResult check_spike_generation(std::span<const WaveEvent> events,
                                   std::uint32_t n_molecules, std::size_t min_spikes = 10);

CheckResult check_slope_band(std::span<const double> slopes, double lo = -1.35,
                             double hi = -0.65);

// Oscillation-only prefix, then the first sawtooth, then the first spike,
// then spike-dominant windows of `window` steps through to the end.
CheckResult check_ramp_order(const RunSeries& series, std::span<const WaveEvent> events,
                             std::uint32_t n_molecules, std::uint64_t window = 2500);

// Regime checks over a sweep: zero events at noise 0, lock-in at the
// smallest positive value below 1e-5, sawtooth-dominant near 5e-3 and
// spike-dominant at the largest value. Points that are absent are skipped.
std::vector<CheckResult> check_sweep_regimes(std::span<const GridPoint> grid);

// Closure values and shared set of the three-block relation, or the
// element count, shared set and law outcomes of the two-block relation.
std::vector<CheckResult> check_lattice_ground_truth(const std::string& builtin,
                                                    const LatticeOutcome& outcome);

// Checks attached to a builtin scenario name; empty for custom scenarios.
std::vector<CheckResult> check_run(const ScenarioConfig& config, const RunOutcome& run);

}  // namespace chemlat
