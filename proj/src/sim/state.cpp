#include <algorithm>
#include <numeric>

#include "chemlat/error.hpp"
#include "chemlat/kernels.hpp"
#include "chemlat/sim.hpp"

namespace chemlat {

std::uint32_t SimState::active_count() const {
  return static_cast<std::uint32_t>(kernels::active().count_nonzero(m1));
}

SimState init_state(const SimParams& params) {
  params.validate();
  const std::uint32_t n = params.n_molecules;
  SimState s;
  s.m0.resize(n);
  std::iota(s.m0.begin(), s.m0.end(), ClusterId{0});
  s.m1.assign(n, 0);
  s.c0.assign(n, 1);
  s.c1.assign(n, 0);
  s.cl.resize(n);
  for (MoleculeId k = 0; k < n; ++k) s.cl[k] = {k};
  s.rng = Rng(params.seed);
  s.draws.resize(n);
  return s;
}

void merge_clusters(SimState& s, ClusterId p, ClusterId q) {
  if (!(p < q && q < s.c_max())) throw DomainError("merge_clusters: need p < q < c_max");
  s.c0[p] += s.c0[q];
  s.c1[p] += s.c1[q];
  auto& dst = s.cl[p];
  dst.insert(dst.end(), s.cl[q].begin(), s.cl[q].end());
  for (MoleculeId z : dst) s.m0[z] = p;
  // literal shift of every index above q
  s.c0.erase(s.c0.begin() + q);
  s.c1.erase(s.c1.begin() + q);
  s.cl.erase(s.cl.begin() + q);
  for (auto& c : s.m0) {
    if (c > q) --c;
  }
}

void split_cluster(SimState& s, ClusterId k, std::uint32_t cut) {
  if (k >= s.c_max()) throw DomainError("split_cluster: no such cluster");
  if (cut < 1 || cut >= s.c0[k]) throw DomainError("split_cluster: cut must be in [1, c0-1]");
  const auto fresh = static_cast<ClusterId>(s.c_max());
  auto& src = s.cl[k];
  std::vector<MoleculeId> tail(src.begin() + cut, src.end());
  src.resize(cut);

  std::uint32_t head_active = 0;
  for (MoleculeId z : src) head_active += s.m1[z];
  std::uint32_t tail_active = 0;
  for (MoleculeId z : tail) {
    tail_active += s.m1[z];
    s.m0[z] = fresh;
  }
  s.c0[k] = cut;
  s.c1[k] = head_active;
  s.c0.push_back(static_cast<std::uint32_t>(tail.size()));
  s.c1.push_back(tail_active);
  s.cl.push_back(std::move(tail));
}

ClusterId pick_split_candidate(SimState& s) {
  const auto k = static_cast<MoleculeId>(s.rng.below(s.n_molecules()));
  return s.m0[k];
}

std::optional<MergeEvent> attempt_clustering(SimState& s, double theta_c) {
  const std::uint32_t cmax = s.c_max();
  if (cmax < 2) return std::nullopt;
  auto p = static_cast<ClusterId>(s.rng.below(cmax));
  auto q = static_cast<ClusterId>(s.rng.below(cmax));
  while (q == p) q = static_cast<ClusterId>(s.rng.below(cmax));
  if (q < p) std::swap(p, q);
  if (!(s.ratio(p) < theta_c && s.ratio(q) < theta_c)) return std::nullopt;
  merge_clusters(s, p, q);
  return MergeEvent{p, q};
}

std::optional<SplitEvent> attempt_declustering(SimState& s, double theta_dec) {
  const ClusterId k = pick_split_candidate(s);
  if (!(s.ratio(k) > theta_dec)) return std::nullopt;
  if (s.c0[k] < 2) return std::nullopt;
  const auto cut = static_cast<std::uint32_t>(1 + s.rng.below(s.c0[k] - 1));
  split_cluster(s, k, cut);
  return SplitEvent{k, cut};
}

Boundary apply_boundary_rules(SimState& s) {
  const std::uint32_t n = s.n_molecules();
  if (s.c_max() == n) {
    std::fill(s.m1.begin(), s.m1.end(), std::uint8_t{0});
    std::fill(s.c1.begin(), s.c1.end(), 0u);
    return Boundary::all_inactivated;
  }
  if (s.c_max() == 1) {
    std::fill(s.m1.begin(), s.m1.end(), std::uint8_t{1});
    s.c1[0] = n;
    return Boundary::all_activated;
  }
  return Boundary::none;
}

void recount_active(SimState& s) {
  std::fill(s.c1.begin(), s.c1.end(), 0u);
  for (std::size_t k = 0; k < s.m0.size(); ++k) s.c1[s.m0[k]] += s.m1[k];
}

std::size_t apply_noise(SimState& s, double p) {
  if (!(p > 0.0)) return 0;
  s.draws.resize(s.m1.size());
  for (auto& u : s.draws) u = s.rng.unit();
  const std::size_t flips = kernels::active().flip_below(s.m1, s.draws, p);
  if (flips != 0) recount_active(s);
  return flips;
}

std::vector<std::string> audit_consistency(const SimState& s) {
  std::vector<std::string> out;
  const std::uint32_t n = s.n_molecules();
  const std::uint32_t cmax = s.c_max();
  if (s.m1.size() != n) out.push_back("m1 length differs from m0 length");
  if (s.c1.size() != cmax || s.cl.size() != cmax) {
    out.push_back("cluster arrays c0/c1/cl have different lengths");
    return out;
  }
  if (cmax < 1 || cmax > n) {
    out.push_back("c_max=" + std::to_string(cmax) + " outside [1, N]");
  }
  std::uint64_t total = 0;
  std::vector<std::uint32_t> seen(n, 0);
  for (ClusterId c = 0; c < cmax; ++c) {
    const std::string tag = "cluster " + std::to_string(c) + ": ";
    total += s.c0[c];
    if (s.c0[c] != s.cl[c].size()) {
      out.push_back(tag + "c0=" + std::to_string(s.c0[c]) + " but membership list has " +
                    std::to_string(s.cl[c].size()));
    }
    if (s.c0[c] == 0) out.push_back(tag + "empty");
    std::uint32_t active = 0;
    for (MoleculeId z : s.cl[c]) {
      if (z >= n) {
        out.push_back(tag + "member " + std::to_string(z) + " out of range");
        continue;
      }
      ++seen[z];
      if (s.m0[z] != c) {
        out.push_back(tag + "member " + std::to_string(z) + " has m0=" +
                      std::to_string(s.m0[z]));
      }
      if (z < s.m1.size()) active += s.m1[z];
    }
    if (s.c1[c] != active) {
      out.push_back(tag + "c1=" + std::to_string(s.c1[c]) + " but members hold " +
                    std::to_string(active) + " active");
    }
    if (s.c1[c] > s.c0[c]) out.push_back(tag + "c1 exceeds c0");
  }
  if (total != n) {
    out.push_back("sum of c0 is " + std::to_string(total) + ", expected " + std::to_string(n));
  }
  for (MoleculeId z = 0; z < n; ++z) {
    if (seen[z] != 1) {
      out.push_back("molecule " + std::to_string(z) + " appears " + std::to_string(seen[z]) +
                    " times in membership lists");
    }
    if (s.m1[z] > 1) out.push_back("molecule " + std::to_string(z) + " has m1 outside {0,1}");
  }
  return out;
}

}  // namespace chemlat
