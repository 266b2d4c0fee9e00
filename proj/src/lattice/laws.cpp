#include <algorithm>
#include <functional>
#include <numeric>

#include "chemlat/error.hpp"
#include "chemlat/lattice.hpp"

namespace chemlat {

namespace {

constexpr std::size_t kMaxDistributiveElements = 512;
constexpr std::size_t kMaxOrthoElements = 4096;
constexpr std::size_t kMaxBlockElements = 4096;
constexpr int kMaxBlockAtoms = 10;

}  // namespace

DistributiveCheck check_distributive(const Lattice& lat) {
  if (lat.size() > kMaxDistributiveElements) {
    throw CapacityError("check_distributive: " + std::to_string(lat.size()) +
                        " elements exceed the exhaustive limit");
  }
  DistributiveCheck out;
  for (RowSet x : lat.elements) {
    for (RowSet y : lat.elements) {
      const RowSet xy = meet(lat, x, y);
      for (RowSet z : lat.elements) {
        const RowSet lhs = meet(lat, x, join(lat, y, z));
        const RowSet rhs = join(lat, xy, meet(lat, x, z));
        if (lhs != rhs) {
          out.distributive = false;
          out.witness = std::array<RowSet, 3>{x, y, z};
          return out;
        }
      }
    }
  }
  return out;
}

namespace {

class OrthoSearch {
 public:
  OrthoSearch(const Lattice& lat, std::size_t budget) : lat_(lat), budget_(budget) {
    const std::size_t n = lat.size();
    cands_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (RowSet c : find_complements(lat, lat.elements[i])) {
        const std::size_t ci = *lat.index_of(c);
        if (ci != i) cands_[i].push_back(ci);
      }
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return cands_[a].size() < cands_[b].size();
    });
    comp_.assign(n, kUnset);
  }

  // true: assignment found; false: none exists. Sets exhausted() on budget.
  bool run() { return assign(0); }
  bool exhausted() const { return exhausted_; }
  const std::vector<std::size_t>& complement() const { return comp_; }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  bool leq(std::size_t a, std::size_t b) const {
    return lat_.elements[a].subset_of(lat_.elements[b]);
  }

  // x -> c together with c -> x keeps the map order-reversing against every
  // pair already fixed.
  bool consistent(std::size_t x, std::size_t c) const {
    for (std::size_t a : assigned_) {
      const std::size_t ac = comp_[a];
      if (leq(x, a) && !leq(ac, c)) return false;
      if (leq(a, x) && !leq(c, ac)) return false;
      if (leq(c, a) && !leq(ac, x)) return false;
      if (leq(a, c) && !leq(x, ac)) return false;
    }
    return true;
  }

  bool assign(std::size_t pos) {
    while (pos < order_.size() && comp_[order_[pos]] != kUnset) ++pos;
    if (pos == order_.size()) return true;
    const std::size_t x = order_[pos];
    for (std::size_t c : cands_[x]) {
      if (comp_[c] != kUnset) continue;
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      if (!consistent(x, c)) continue;
      comp_[x] = c;
      comp_[c] = x;
      assigned_.push_back(x);
      assigned_.push_back(c);
      if (assign(pos + 1)) return true;
      if (exhausted_) return false;
      assigned_.resize(assigned_.size() - 2);
      comp_[x] = kUnset;
      comp_[c] = kUnset;
    }
    return false;
  }

  const Lattice& lat_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<std::vector<std::size_t>> cands_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> comp_;
  std::vector<std::size_t> assigned_;
};

}  // namespace

OrthoCheck check_orthomodular(const Lattice& lat, std::size_t node_budget) {
  if (lat.size() > kMaxOrthoElements) {
    throw CapacityError("check_orthomodular: " + std::to_string(lat.size()) +
                        " elements exceed the exhaustive limit");
  }
  OrthoCheck out;
  if (lat.size() == 1) {
    out.status = OrthoStatus::orthomodular;
    out.complement = lat.elements;
    return out;
  }
  OrthoSearch search(lat, node_budget);
  if (!search.run()) {
    out.status = search.exhausted() ? OrthoStatus::search_exhausted
                                    : OrthoStatus::no_orthocomplementation;
    return out;
  }
  out.complement.reserve(lat.size());
  for (std::size_t c : search.complement()) out.complement.push_back(lat.elements[c]);

  for (std::size_t i = 0; i < lat.size(); ++i) {
    const RowSet x = lat.elements[i];
    for (RowSet y : lat.elements) {
      if (!x.subset_of(y)) continue;
      if (join(lat, x, meet(lat, out.complement[i], y)) != y) {
        out.status = OrthoStatus::law_violated;
        out.witness = std::pair(x, y);
        return out;
      }
    }
  }
  out.status = OrthoStatus::orthomodular;
  return out;
}

std::vector<BooleanBlock> boolean_blocks(const Lattice& lat, const OrthoCheck& ortho) {
  std::vector<BooleanBlock> blocks;
  if (ortho.complement.size() != lat.size() || lat.size() > kMaxBlockElements ||
      lat.size() < 2) {
    return blocks;
  }
  std::vector<std::size_t> atoms;
  for (const Cover& c : lat.covers) {
    if (c.lower == 0) atoms.push_back(c.upper);
  }
  const std::size_t na = atoms.size();
  if (na > 64) return blocks;
  auto comp_of = [&](std::size_t idx) { return ortho.complement[idx]; };
  std::vector<std::uint64_t> adj(na, 0);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < na; ++b) {
      if (a != b && lat.elements[atoms[a]].subset_of(comp_of(atoms[b]))) {
        adj[a] |= std::uint64_t{1} << b;
      }
    }
  }

  // Bron-Kerbosch without pivoting over the orthogonality graph
  std::vector<std::uint64_t> cliques;
  std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)> expand =
      [&](std::uint64_t r, std::uint64_t p, std::uint64_t x) {
        if (p == 0 && x == 0) {
          cliques.push_back(r);
          return;
        }
        while (p != 0) {
          const int v = std::countr_zero(p);
          const std::uint64_t bit = std::uint64_t{1} << v;
          expand(r | bit, p & adj[v], x & adj[v]);
          p &= ~bit;
          x |= bit;
        }
      };
  const std::uint64_t all = na == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << na) - 1;
  expand(0, all, 0);
  std::sort(cliques.begin(), cliques.end());

  for (std::uint64_t clique : cliques) {
    const int k = std::popcount(clique);
    if (k == 0 || k > kMaxBlockAtoms) continue;
    BooleanBlock block;
    for (std::size_t a = 0; a < na; ++a) {
      if ((clique >> a) & 1u) block.atoms.push_back(lat.elements[atoms[a]]);
    }
    // joins of all atom subsets, indexed by subset bitmask
    const std::size_t m = std::size_t{1} << k;
    std::vector<RowSet> table(m, lat.bottom());
    for (std::size_t u = 1; u < m; ++u) {
      const int low = std::countr_zero(u);
      table[u] = join(lat, table[u & (u - 1)], block.atoms[low]);
    }
    if (table[m - 1] != lat.top()) continue;
    std::vector<RowSet> sorted = table;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    bool sublattice = true;
    for (std::size_t u = 0; u < m && sublattice; ++u) {
      for (std::size_t v = u + 1; v < m; ++v) {
        if (meet(lat, table[u], table[v]) != table[u & v]) {
          sublattice = false;
          break;
        }
      }
    }
    if (!sublattice) continue;
    block.elements = std::move(sorted);
    blocks.push_back(std::move(block));
  }
  return blocks;
}

std::vector<RowSet> shared_elements(const std::vector<BooleanBlock>& blocks) {
  std::vector<RowSet> all;
  for (const auto& b : blocks) all.insert(all.end(), b.elements.begin(), b.elements.end());
  std::sort(all.begin(), all.end());
  std::vector<RowSet> out;
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    if (all[i] == all[i + 1] && (out.empty() || out.back() != all[i])) out.push_back(all[i]);
  }
  return out;
}

LawReport analyze_laws(const Lattice& lat) {
  LawReport r;
  r.element_count = lat.size();
  if (lat.size() <= kMaxDistributiveElements) {
    r.distributive = check_distributive(lat);
  } else {
    r.distributive.checked = false;
  }
  if (lat.size() <= kMaxOrthoElements) {
    r.ortho = check_orthomodular(lat);
    r.blocks = boolean_blocks(lat, r.ortho);
    r.shared = shared_elements(r.blocks);
  } else {
    r.ortho.status = OrthoStatus::search_exhausted;
  }
  return r;
}

}  // namespace chemlat
