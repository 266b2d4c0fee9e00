#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chemlat/analysis.hpp"
#include "chemlat/lattice.hpp"
#include "chemlat/params.hpp"

namespace chemlat {

enum class ScenarioKind { single, sweep, ramp, lattice };
enum class SpectrumTrace { active, clusters };

std::string_view to_string(ScenarioKind kind);

struct AnalysisConfig {
  SpectrumTrace trace = SpectrumTrace::active;
  double band_lo = 1e-3;
  double band_hi = 1e-1;
  // Steps simulated and discarded before recording starts.
  std::uint64_t burn_in = 0;
  // Unset fields follow DetectorConfig::for_population(n_molecules).
  std::optional<std::uint32_t> rise_window;
  std::optional<std::uint32_t> fall_window;
  std::optional<double> min_amplitude;

  DetectorConfig detector(std::uint32_t n_molecules) const;
  bool operator==(const AnalysisConfig&) const = default;
};

struct ScenarioConfig {
  std::string name = "custom";
  ScenarioKind kind = ScenarioKind::single;
  SimParams sim;  // max_steps counts recorded steps
  std::vector<double> sweep_values;
  std::uint32_t replicates = 1;  // sweep only
  std::string relation_source;   // lattice only: file path or generator spec
  std::filesystem::path output_dir = "out";
  std::uint64_t record_every = 1;
  AnalysisConfig analysis;

  // Throws ConfigError naming the offending field path.
  void validate() const;
  bool operator==(const ScenarioConfig&) const = default;
};

// Names accepted by builtin_scenario, in presentation order.
const std::vector<std::string>& builtin_names();
std::optional<ScenarioConfig> builtin_scenario(std::string_view name);

// Strict JSON parsing. Unknown keys and kind-inappropriate fields are
// rejected with the field path and, where it can be located, the line.
// A "base" key starts from a builtin and applies the remaining keys on top.
ScenarioConfig parse_config_text(std::string_view text);
ScenarioConfig parse_config(const std::filesystem::path& path);

nlohmann::json to_json(const SimParams& params);
nlohmann::json to_json(const ScenarioConfig& config);

// In-memory outcome of one simulated run.
struct RunOutcome {
  RunSeries series;
  std::vector<WaveEvent> events;
  Spectrum spectrum;
  RunSummary summary;
  std::vector<std::string> audit;  // audit_consistency at termination
};

RunOutcome simulate(const ScenarioConfig& config);
RunOutcome simulate(const ScenarioConfig& config, std::uint64_t seed, double constant_noise);

// Sub-run seed for sweep point `value_index`, replicate `replicate`.
std::uint64_t sweep_seed(std::uint64_t master, std::size_t value_index, std::uint32_t replicate);

// Entries into cluster_count == 1 (full aggregation) and == N (full
// fragmentation). A run that starts at an extreme counts as entering it.
struct ExtremeVisits {
  std::size_t to_one = 0;
  std::size_t to_n = 0;
  std::size_t to_n_after_first_one = 0;
  std::optional<std::uint64_t> first_one;
};

ExtremeVisits extreme_visits(const RunSeries& series, std::uint32_t n_molecules);

struct GridRun {
  std::uint32_t replicate = 0;
  std::uint64_t seed = 0;
  RunSummary summary;
  ExtremeVisits visits;
  bool locked_in = false;
};

struct GridPoint {
  double noise = 0.0;
  std::vector<GridRun> runs;

  std::size_t spikes() const;
  std::size_t sawtooths() const;
  std::size_t events() const { return spikes() + sawtooths(); }
  double spike_fraction() const;
  double sawtooth_fraction() const;
  std::size_t locked_in_runs() const;
};

using RunSink = std::function<void(std::size_t value_index, const GridRun&, const RunOutcome&)>;

// Every (value, replicate) pair of a sweep, in order. `sink` sees each full
// outcome before it is dropped.
std::vector<GridPoint> simulate_sweep(const ScenarioConfig& config, const RunSink& sink = {});

struct LatticeOutcome {
  Lattice lattice;
  LawReport laws;
};

// Resolves relation_source: a builtin lattice name, a generator spec
// ("blocks=..."), or a relation file.
Relation resolve_relation(std::string_view source);
LatticeOutcome analyze_relation(const Relation& rel);

std::string series_csv(const RunSeries& series, std::uint64_t record_every);
nlohmann::json summary_json(const ScenarioConfig& config, const RunOutcome& run);

struct ManifestEntry {
  std::string path;  // relative to output_dir
  std::uint64_t bytes = 0;
  std::string sha256;
};

struct Manifest {
  std::string scenario;
  std::filesystem::path output_dir;
  std::vector<ManifestEntry> files;
};

nlohmann::json to_json(const Manifest& manifest);

// Runs any scenario kind and writes its artifacts plus manifest.json.
// Throws IoError when the output directory cannot be written.
Manifest run_scenario(const ScenarioConfig& config);
// Sweep kind only: one sub-directory per value and replicate, plus grid.json.
// The aggregated grid is copied to `grid_out` when given.
Manifest run_sweep(const ScenarioConfig& config, std::vector<GridPoint>* grid_out = nullptr);

// series.csv + summary.json for an outcome already simulated from `config`.
Manifest write_run_artifacts(const ScenarioConfig& config, const RunOutcome& run);
// relation.txt, lattice.dot, laws.json and summary.json.
Manifest write_lattice_artifacts(const ScenarioConfig& config, const LatticeOutcome& outcome);

std::string sha256_hex(std::string_view data);

}  // namespace chemlat
