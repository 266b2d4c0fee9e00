#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chemlat {

// Bitmask over at most 64 indices. The tag keeps subsets of the row
// family (S1) and the column family (S2) from being mixed up.
template <class Tag>
struct IndexSet {
  std::uint64_t bits = 0;

  static IndexSet of(std::initializer_list<unsigned> idx) {
    IndexSet s;
    for (unsigned i : idx) s.bits |= std::uint64_t{1} << i;
    return s;
  }
  static IndexSet first(unsigned n) {
    return {n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
  }

  bool contains(unsigned i) const { return (bits >> i) & 1u; }
  bool empty() const { return bits == 0; }
  int size() const { return std::popcount(bits); }
  bool subset_of(IndexSet o) const { return (bits & ~o.bits) == 0; }
  bool proper_subset_of(IndexSet o) const { return subset_of(o) && bits != o.bits; }

  friend IndexSet operator&(IndexSet a, IndexSet b) { return {a.bits & b.bits}; }
  friend IndexSet operator|(IndexSet a, IndexSet b) { return {a.bits | b.bits}; }
  friend bool operator==(IndexSet, IndexSet) = default;
  friend auto operator<=>(IndexSet, IndexSet) = default;
};

struct RowTag {};
struct ColTag {};
using RowSet = IndexSet<RowTag>;
using ColSet = IndexSet<ColTag>;

// Incidence between two families of classes: row i (A_{i+1}) relates to
// column j (a_{j+1}) when cells[i][j] is set. No row or column may be empty.
class Relation {
 public:
  static constexpr unsigned kMaxSize = 64;

  // Throws ConfigError on ragged input, empty rows/columns or > 64 entries.
  static Relation from_cells(const std::vector<std::vector<bool>>& cells);

  unsigned n_rows() const { return static_cast<unsigned>(rows_.size()); }
  unsigned n_cols() const { return n_cols_; }
  bool related(unsigned i, unsigned j) const { return (rows_[i] >> j) & 1u; }
  const std::vector<std::uint64_t>& row_masks() const { return rows_; }
  RowSet all_rows() const { return RowSet::first(n_rows()); }
  ColSet all_cols() const { return ColSet::first(n_cols()); }

  bool operator==(const Relation&) const = default;

 private:
  std::vector<std::uint64_t> rows_;
  unsigned n_cols_ = 0;
};

// Columns related to some row of x.
ColSet upper_approx(const Relation& rel, RowSet x);
// Rows all of whose related columns lie in y.
RowSet lower_approx(const Relation& rel, ColSet y);
// lower_approx(upper_approx(x)).
RowSet closure(const Relation& rel, RowSet x);

// Diagonal sub-relations laid out along the diagonal. A block shares its
// first index with the previous block's last index when that 1-based index
// is listed in `overlap`. With fill_off_blocks every pair of indices that
// share no block is related. Throws ConfigError on inconsistent input.
Relation build_block_relation(const std::vector<unsigned>& block_sizes,
                              const std::vector<unsigned>& overlap,
                              bool fill_off_blocks);

struct Cover {
  std::size_t lower;
  std::size_t upper;
  bool operator==(const Cover&) const = default;
};

// Closure fixed points ordered by inclusion. Elements are sorted by
// bitmask value, so elements.front() is the empty set and elements.back()
// is S1.
struct Lattice {
  static constexpr unsigned kMaxRows = 20;

  Relation relation;
  std::vector<RowSet> elements;
  std::vector<Cover> covers;

  std::size_t size() const { return elements.size(); }
  RowSet bottom() const { return elements.front(); }
  RowSet top() const { return elements.back(); }
  std::optional<std::size_t> index_of(RowSet x) const;
  bool contains(RowSet x) const { return index_of(x).has_value(); }
};

// Exhaustive scan of all 2^n row subsets. Throws CapacityError above
// Lattice::kMaxRows rows.
Lattice enumerate_lattice(const Relation& rel);

// Upper covers of every element: the minimal sets among closure(x + i).
std::vector<Cover> hasse_cover(const Lattice& lat);

// Greatest element inside x & y and least element containing x | y.
// Throws DomainError if either argument is not an element.
std::pair<RowSet, RowSet> meet_join(const Lattice& lat, RowSet x, RowSet y);
RowSet meet(const Lattice& lat, RowSet x, RowSet y);
RowSet join(const Lattice& lat, RowSet x, RowSet y);

// Every c with x ^ c = bottom and x v c = top.
std::vector<RowSet> find_complements(const Lattice& lat, RowSet x);

struct DistributiveCheck {
  bool checked = true;  // false when the lattice was too large to scan
  bool distributive = true;
  std::optional<std::array<RowSet, 3>> witness;  // x ^ (y v z) != (x ^ y) v (x ^ z)
};

// Throws CapacityError when the element count makes the O(n^3) scan
// unreasonable (more than 512 elements).
DistributiveCheck check_distributive(const Lattice& lat);

enum class OrthoStatus { orthomodular, law_violated, no_orthocomplementation, search_exhausted };

struct OrthoCheck {
  OrthoStatus status = OrthoStatus::no_orthocomplementation;
  // complement[i] is the orthocomplement of elements[i] when one was found
  std::vector<RowSet> complement;
  std::optional<std::pair<RowSet, RowSet>> witness;  // x <= y, y != x v (x' ^ y)
  bool orthomodular() const { return status == OrthoStatus::orthomodular; }
};

// Backtracking search for an involutive, order-reversing complement map,
// then the law x <= y => y = x v (x' ^ y) over all pairs.
OrthoCheck check_orthomodular(const Lattice& lat, std::size_t node_budget = 1'000'000);

struct BooleanBlock {
  std::vector<RowSet> atoms;
  std::vector<RowSet> elements;
};

// Maximal Boolean subalgebras: maximal sets of pairwise orthogonal atoms
// (a <= b') whose joins generate a 2^k sublattice reaching the top.
// Requires a complement map from check_orthomodular; returns an empty list
// when none is available or the lattice exceeds 4096 elements.
std::vector<BooleanBlock> boolean_blocks(const Lattice& lat, const OrthoCheck& ortho);

// Elements lying in at least two blocks, in lattice order.
std::vector<RowSet> shared_elements(const std::vector<BooleanBlock>& blocks);

// Runs every check; checks whose size limits are exceeded are reported as
// not performed instead of throwing.
struct LawReport {
  std::size_t element_count = 0;
  DistributiveCheck distributive;
  OrthoCheck ortho;
  std::vector<BooleanBlock> blocks;
  std::vector<RowSet> shared;
};

LawReport analyze_laws(const Lattice& lat);

// "{A1,A3}" style label; the empty set prints as "{}".
std::string set_label(RowSet x, char prefix = 'A');

}  // namespace chemlat
