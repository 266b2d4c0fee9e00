#include <algorithm>
#include <cmath>

#include "chemlat/error.hpp"
#include "chemlat/params.hpp"

namespace chemlat {

double noise_at(const NoiseSchedule& schedule, std::uint64_t t) {
  double p = schedule.p0;
  if (schedule.kind == NoiseKind::ramp) {
    if (t < schedule.onset_step) return 0.0;
    p = schedule.p0 + schedule.rate * static_cast<double>(t - schedule.onset_step);
  }
  return std::clamp(p, 0.0, 1.0);
}

namespace {

void require_unit(double v, const char* field, double hi = 1.0) {
  if (!(v >= 0.0 && v <= hi)) {
    throw ConfigError("must lie in [0, " + std::to_string(hi) + "], got " +
                          std::to_string(v),
                      field);
  }
}

}  // namespace

void SimParams::validate() const {
  if (n_molecules < 2) throw ConfigError("must be at least 2", "n_molecules");
  require_unit(theta_c, "theta_c");
  require_unit(theta_dec, "theta_dec");
  require_unit(theta_a, "theta_a", 0.5);
  require_unit(p_coh, "p_coh");
  require_unit(noise.p0, "noise.p0");
  if (!std::isfinite(noise.rate)) throw ConfigError("must be finite", "noise.rate");
  if (max_steps == 0) throw ConfigError("must be positive", "max_steps");
}

}  // namespace chemlat
