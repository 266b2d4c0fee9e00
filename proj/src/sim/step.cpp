#include "chemlat/interplay.hpp"
#include "chemlat/sim.hpp"

namespace chemlat {

StepReport step(SimState& s, const SimParams& params) {
  StepReport r;
  r.t = s.t;
  r.merged = attempt_clustering(s, params.theta_c);
  r.split = attempt_declustering(s, params.theta_dec);
  r.boundary = apply_boundary_rules(s);
  r.noise_p = noise_at(params.noise, s.t);
  r.noise_flips = apply_noise(s, r.noise_p);
  if (params.interplay_enabled) {
    InterplayOutcome io = run_interplay(s, params);
    r.coherence_flips = io.flips;
    r.interplay = io;
    if (io.kicked) {
      const Boundary again = apply_boundary_rules(s);
      if (again != Boundary::none) r.boundary = again;
    }
  }
  ++s.t;
  return r;
}

}  // namespace chemlat
