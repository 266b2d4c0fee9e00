#pragma once

#include <cstddef>
#include <cstdint>

#include "chemlat/sim.hpp"

namespace chemlat {

struct ModalCluster {
  std::uint32_t mode_size;
  ClusterId representative;
};

// Most frequent cluster size; ties go to the smaller size and the
// representative is the lowest-index cluster of that size.
ModalCluster modal_cluster(const SimState& state);

double active_ratio(const SimState& state, ClusterId cluster);

// Active fraction over all clusters of the given size.
double pooled_active_ratio(const SimState& state, std::uint32_t size);

inline bool in_coherence_band(double r_a, double theta_a) {
  return theta_a <= r_a && r_a <= 1.0 - theta_a;
}

// 1 when the ratio is below one half, 0 otherwise.
inline std::uint8_t coherence_target(double r_a) { return r_a < 0.5 ? 1 : 0; }

// Sets every molecule's activity to coherence_target(r_a) with probability
// p_coh and recounts c1. Returns the number of values that changed. Throws
// DomainError without touching the state if r_a lies outside the band.
std::size_t coherence_kick(SimState& state, double r_a, double p_coh, double theta_a);

// modal_cluster -> ratio -> kick when the band condition holds.
InterplayOutcome run_interplay(SimState& state, const SimParams& params);

}  // namespace chemlat
