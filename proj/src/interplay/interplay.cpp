#include <map>

#include "chemlat/error.hpp"
#include "chemlat/interplay.hpp"
#include "chemlat/kernels.hpp"

namespace chemlat {

ModalCluster modal_cluster(const SimState& s) {
  // frequency of each cluster size; ordered map gives the smallest size on ties
  std::map<std::uint32_t, std::uint32_t> freq;
  for (auto size : s.c0) ++freq[size];
  std::uint32_t best_size = 0;
  std::uint32_t best_count = 0;
  for (auto [size, count] : freq) {
    if (count > best_count) {
      best_size = size;
      best_count = count;
    }
  }
  ClusterId rep = 0;
  while (s.c0[rep] != best_size) ++rep;
  return {best_size, rep};
}

double active_ratio(const SimState& s, ClusterId cluster) {
  if (cluster >= s.c_max()) throw DomainError("active_ratio: no such cluster");
  return s.ratio(cluster);
}

double pooled_active_ratio(const SimState& s, std::uint32_t size) {
  std::uint64_t members = 0;
  std::uint64_t active = 0;
  for (ClusterId c = 0; c < s.c_max(); ++c) {
    if (s.c0[c] == size) {
      members += s.c0[c];
      active += s.c1[c];
    }
  }
  if (members == 0) throw DomainError("pooled_active_ratio: no cluster of that size");
  return static_cast<double>(active) / static_cast<double>(members);
}

std::size_t coherence_kick(SimState& s, double r_a, double p_coh, double theta_a) {
  if (!in_coherence_band(r_a, theta_a)) {
    throw DomainError("coherence_kick: ratio outside [theta_a, 1 - theta_a]");
  }
  if (!(p_coh > 0.0)) return 0;
  s.draws.resize(s.m1.size());
  for (auto& u : s.draws) u = s.rng.unit();
  const std::size_t changed =
      kernels::active().assign_below(s.m1, s.draws, p_coh, coherence_target(r_a));
  if (changed != 0) recount_active(s);
  return changed;
}

InterplayOutcome run_interplay(SimState& s, const SimParams& params) {
  InterplayOutcome out;
  const ModalCluster mode = modal_cluster(s);
  out.mode_size = mode.mode_size;
  out.representative = mode.representative;
  out.r_a = params.ratio_mode == RatioMode::pooled
                ? pooled_active_ratio(s, mode.mode_size)
                : active_ratio(s, mode.representative);
  out.target_value = coherence_target(out.r_a);
  if (in_coherence_band(out.r_a, params.theta_a)) {
    out.kicked = true;
    out.flips = coherence_kick(s, out.r_a, params.p_coh, params.theta_a);
  }
  return out;
}

}  // namespace chemlat
