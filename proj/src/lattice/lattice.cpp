#include <algorithm>

#include "chemlat/error.hpp"
#include "chemlat/lattice.hpp"

namespace chemlat {

std::optional<std::size_t> Lattice::index_of(RowSet x) const {
  const auto it = std::lower_bound(elements.begin(), elements.end(), x);
  if (it == elements.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - elements.begin());
}

Lattice enumerate_lattice(const Relation& rel) {
  const unsigned n = rel.n_rows();
  if (n > Lattice::kMaxRows) {
    throw CapacityError("enumerate_lattice: " + std::to_string(n) + " rows exceed the limit of " +
                        std::to_string(Lattice::kMaxRows) +
                        "; split the relation into independent blocks first");
  }
  Lattice lat;
  lat.relation = rel;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    const RowSet x{bits};
    if (closure(rel, x) == x) lat.elements.push_back(x);
  }
  lat.covers = hasse_cover(lat);
  return lat;
}

std::vector<Cover> hasse_cover(const Lattice& lat) {
  std::vector<Cover> out;
  const unsigned n = lat.relation.n_rows();
  std::vector<RowSet> candidates;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const RowSet x = lat.elements[i];
    candidates.clear();
    for (unsigned r = 0; r < n; ++r) {
      if (x.contains(r)) continue;
      candidates.push_back(closure(lat.relation, x | RowSet::of({r})));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (RowSet c : candidates) {
      const bool minimal = std::none_of(candidates.begin(), candidates.end(), [&](RowSet d) {
        return d.proper_subset_of(c);
      });
      if (minimal) out.push_back({i, *lat.index_of(c)});
    }
  }
  std::sort(out.begin(), out.end(), [](const Cover& a, const Cover& b) {
    return std::pair(a.lower, a.upper) < std::pair(b.lower, b.upper);
  });
  return out;
}

namespace {

void require_element(const Lattice& lat, RowSet x, const char* what) {
  if (!lat.contains(x)) {
    throw DomainError(std::string(what) + ": " + set_label(x) + " is not a lattice element");
  }
}

// Closed sets of a rough-set closure are closed under intersection and the
// closure of a union is its least closed superset, so both fast paths are
// exact; the scans cover anything else.
RowSet meet_unchecked(const Lattice& lat, RowSet x, RowSet y) {
  const RowSet common = x & y;
  if (lat.contains(common)) return common;
  RowSet best = lat.bottom();
  for (RowSet e : lat.elements) {
    if (e.subset_of(common) && best.subset_of(e)) best = e;
  }
  return best;
}

RowSet join_unchecked(const Lattice& lat, RowSet x, RowSet y) {
  const RowSet c = closure(lat.relation, x | y);
  if (lat.contains(c)) return c;
  const RowSet both = x | y;
  RowSet best = lat.top();
  for (RowSet e : lat.elements) {
    if (both.subset_of(e) && e.subset_of(best)) best = e;
  }
  return best;
}

}  // namespace

RowSet meet(const Lattice& lat, RowSet x, RowSet y) {
  require_element(lat, x, "meet");
  require_element(lat, y, "meet");
  return meet_unchecked(lat, x, y);
}

RowSet join(const Lattice& lat, RowSet x, RowSet y) {
  require_element(lat, x, "join");
  require_element(lat, y, "join");
  return join_unchecked(lat, x, y);
}

std::pair<RowSet, RowSet> meet_join(const Lattice& lat, RowSet x, RowSet y) {
  return {meet(lat, x, y), join(lat, x, y)};
}

std::vector<RowSet> find_complements(const Lattice& lat, RowSet x) {
  require_element(lat, x, "find_complements");
  std::vector<RowSet> out;
  for (RowSet c : lat.elements) {
    if (meet_unchecked(lat, x, c) == lat.bottom() && join_unchecked(lat, x, c) == lat.top()) {
      out.push_back(c);
    }
  }
  return out;
}

std::string set_label(RowSet x, char prefix) {
  std::string s = "{";
  bool first = true;
  for (unsigned i = 0; i < 64; ++i) {
    if (!x.contains(i)) continue;
    if (!first) s += ',';
    s += prefix;
    s += std::to_string(i + 1);
    first = false;
  }
  return s + "}";
}

}  // namespace chemlat
