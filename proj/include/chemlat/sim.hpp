#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chemlat/params.hpp"
#include "chemlat/rng.hpp"

namespace chemlat {

using MoleculeId = std::uint32_t;
using ClusterId = std::uint32_t;

// Paired molecule view and cluster view of the aggregate population.
// Indices are zero-based: molecule k lives in cluster m0[k], cluster n
// holds the molecules cl[n] in insertion order, c0[n] == cl[n].size() and
// c1[n] counts its active members.
struct SimState {
  std::uint64_t t = 0;
  std::vector<ClusterId> m0;
  std::vector<std::uint8_t> m1;
  std::vector<std::uint32_t> c0;
  std::vector<std::uint32_t> c1;
  std::vector<std::vector<MoleculeId>> cl;
  Rng rng{0};
  std::vector<double> draws;  // scratch for per-molecule uniforms

  std::uint32_t n_molecules() const { return static_cast<std::uint32_t>(m0.size()); }
  std::uint32_t c_max() const { return static_cast<std::uint32_t>(c0.size()); }
  std::uint32_t active_count() const;
  double ratio(ClusterId n) const {
    return static_cast<double>(c1[n]) / static_cast<double>(c0[n]);
  }

  // Compares everything except the scratch buffer.
  bool operator==(const SimState& o) const {
    return t == o.t && m0 == o.m0 && m1 == o.m1 && c0 == o.c0 && c1 == o.c1 &&
           cl == o.cl && rng == o.rng;
  }
};

enum class Boundary { none, all_activated, all_inactivated };

struct MergeEvent {
  ClusterId p;
  ClusterId q;
  bool operator==(const MergeEvent&) const = default;
};

struct SplitEvent {
  ClusterId k;
  std::uint32_t s;  // size of the part that keeps index k
  bool operator==(const SplitEvent&) const = default;
};

struct InterplayOutcome {
  std::uint32_t mode_size = 0;
  ClusterId representative = 0;
  double r_a = 0.0;
  bool kicked = false;
  std::uint8_t target_value = 0;
  std::size_t flips = 0;
  bool operator==(const InterplayOutcome&) const = default;
};

struct StepReport {
  std::uint64_t t = 0;
  std::optional<MergeEvent> merged;
  std::optional<SplitEvent> split;
  Boundary boundary = Boundary::none;
  std::size_t noise_flips = 0;
  std::size_t coherence_flips = 0;
  double noise_p = 0.0;
  std::optional<InterplayOutcome> interplay;
  bool operator==(const StepReport&) const = default;
};

// All molecules as inactive monomers; throws ConfigError on invalid params.
SimState init_state(const SimParams& params);

// Fuses cluster q into p (p < q) and packs the indices above q down by one.
void merge_clusters(SimState& state, ClusterId p, ClusterId q);

// Cuts cluster k after its first s members (1 <= s < c0[k]); the remainder
// becomes the new last cluster.
void split_cluster(SimState& state, ClusterId k, std::uint32_t s);

// Draws a molecule uniformly and returns its cluster, so larger clusters
// are picked in proportion to their size.
ClusterId pick_split_candidate(SimState& state);

std::optional<MergeEvent> attempt_clustering(SimState& state, double theta_c);
std::optional<SplitEvent> attempt_declustering(SimState& state, double theta_dec);
Boundary apply_boundary_rules(SimState& state);

// Flips each activity independently with probability p and recounts c1.
std::size_t apply_noise(SimState& state, double p);

void recount_active(SimState& state);

// One full update: clustering, de-clustering, boundary rules, noise, then
// (when enabled) the interplay kick followed by a second boundary check.
StepReport step(SimState& state, const SimParams& params);

// Every violated structural invariant, as a human-readable line.
std::vector<std::string> audit_consistency(const SimState& state);

}  // namespace chemlat
