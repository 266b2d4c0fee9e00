#include <algorithm>

#include "chemlat/error.hpp"
#include "chemlat/kernels.hpp"
#include "chemlat/lattice.hpp"

namespace chemlat {

Relation Relation::from_cells(const std::vector<std::vector<bool>>& cells) {
  if (cells.empty()) throw ConfigError("relation has no rows", "relation");
  const std::size_t cols = cells.front().size();
  if (cols == 0) throw ConfigError("relation has no columns", "relation");
  if (cells.size() > kMaxSize || cols > kMaxSize) {
    throw ConfigError("relation larger than 64x64", "relation");
  }
  Relation rel;
  rel.n_cols_ = static_cast<unsigned>(cols);
  std::uint64_t seen_cols = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].size() != cols) {
      throw ConfigError("row " + std::to_string(i + 1) + " has " +
                            std::to_string(cells[i].size()) + " cells, expected " +
                            std::to_string(cols),
                        "relation");
    }
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      if (cells[i][j]) mask |= std::uint64_t{1} << j;
    }
    if (mask == 0) throw ConfigError("row " + std::to_string(i + 1) + " is empty", "relation");
    seen_cols |= mask;
    rel.rows_.push_back(mask);
  }
  for (std::size_t j = 0; j < cols; ++j) {
    if (((seen_cols >> j) & 1u) == 0) {
      throw ConfigError("column " + std::to_string(j + 1) + " is empty", "relation");
    }
  }
  return rel;
}

ColSet upper_approx(const Relation& rel, RowSet x) {
  return {kernels::active().union_rows(rel.row_masks(), x.bits)};
}

RowSet lower_approx(const Relation& rel, ColSet y) {
  return {kernels::active().rows_within(rel.row_masks(), y.bits)};
}

RowSet closure(const Relation& rel, RowSet x) { return lower_approx(rel, upper_approx(rel, x)); }

Relation build_block_relation(const std::vector<unsigned>& block_sizes,
                              const std::vector<unsigned>& overlap, bool fill_off_blocks) {
  if (block_sizes.empty()) throw ConfigError("at least one block required", "blocks");
  // [first, last] index range of each block, zero-based
  std::vector<std::pair<unsigned, unsigned>> ranges;
  std::vector<unsigned> used_overlap;
  unsigned next = 0;
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    const unsigned size = block_sizes[b];
    if (size == 0) throw ConfigError("block sizes must be positive", "blocks");
    unsigned first = next;
    if (b > 0) {
      const unsigned prev_last_1based = ranges.back().second + 1;
      if (std::find(overlap.begin(), overlap.end(), prev_last_1based) != overlap.end()) {
        first = ranges.back().second;
        used_overlap.push_back(prev_last_1based);
      }
    }
    ranges.emplace_back(first, first + size - 1);
    next = first + size;
  }
  for (unsigned o : overlap) {
    if (std::find(used_overlap.begin(), used_overlap.end(), o) == used_overlap.end()) {
      throw ConfigError("overlap index " + std::to_string(o) +
                            " is not the last index of a block followed by another block",
                        "overlap");
    }
  }
  const unsigned n = next;
  if (n > Relation::kMaxSize) throw ConfigError("layout exceeds 64 indices", "blocks");

  auto share_block = [&](unsigned i, unsigned j) {
    return std::any_of(ranges.begin(), ranges.end(), [&](const auto& r) {
      return r.first <= i && i <= r.second && r.first <= j && j <= r.second;
    });
  };
  std::vector<std::vector<bool>> cells(n, std::vector<bool>(n, false));
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      cells[i][j] = i == j || (fill_off_blocks && !share_block(i, j));
    }
  }
  return Relation::from_cells(cells);
}

}  // namespace chemlat
