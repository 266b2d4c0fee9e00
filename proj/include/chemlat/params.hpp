#pragma once

#include <cstdint>

namespace chemlat {

enum class NoiseKind { constant, ramp };

// Per-step flip probability. A ramp is zero before `onset_step` and grows
// linearly from `p0` afterwards; every evaluation is clamped to [0, 1].
struct NoiseSchedule {
  NoiseKind kind = NoiseKind::constant;
  double p0 = 0.0;
  double rate = 0.0;
  std::uint64_t onset_step = 0;

  static NoiseSchedule constant(double p) { return {NoiseKind::constant, p, 0.0, 0}; }
  static NoiseSchedule ramp(double p0, double rate, std::uint64_t onset) {
    return {NoiseKind::ramp, p0, rate, onset};
  }
  bool operator==(const NoiseSchedule&) const = default;
};

double noise_at(const NoiseSchedule& schedule, std::uint64_t t);

// How the interplay layer measures the active ratio of the modal cluster
// size: from one representative cluster, or pooled over every cluster of
// that size.
enum class RatioMode { representative, pooled };

struct SimParams {
  std::uint32_t n_molecules = 200;
  double theta_c = 0.5;
  double theta_dec = 0.5;
  NoiseSchedule noise{};
  double theta_a = 0.3;
  double p_coh = 0.95;
  bool interplay_enabled = false;
  RatioMode ratio_mode = RatioMode::pooled;
  std::uint64_t max_steps = 100000;
  std::uint64_t seed = 1;

  // Throws ConfigError naming the offending field.
  void validate() const;
  bool operator==(const SimParams&) const = default;
};

}  // namespace chemlat
