#include "kernels_impl.hpp"

#include <bit>

namespace chemlat::kernels::scalar {

std::size_t flip_below(std::span<std::uint8_t> bits, std::span<const double> u,
                       double p) {
  std::size_t flips = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (u[i] < p) {
      bits[i] ^= 1u;
      ++flips;
    }
  }
  return flips;
}

std::size_t assign_below(std::span<std::uint8_t> bits,
                         std::span<const double> u, double p,
                         std::uint8_t value) {
  std::size_t changed = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (u[i] < p && bits[i] != value) {
      bits[i] = value;
      ++changed;
    }
  }
  return changed;
}

std::size_t count_nonzero(std::span<const std::uint8_t> bits) {
  std::size_t n = 0;
  for (auto b : bits) n += (b != 0);
  return n;
}

void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

void accumulate_power(std::span<const double> re, std::span<const double> im,
                      std::span<double> acc) {
  for (std::size_t i = 0; i < acc.size(); ++i) {
    const double rr = re[i] * re[i];
    const double ii = im[i] * im[i];
    acc[i] += rr + ii;
  }
}

std::uint64_t union_rows(std::span<const std::uint64_t> row_masks,
                         std::uint64_t rows) {
  std::uint64_t out = 0;
  while (rows != 0) {
    const int r = std::countr_zero(rows);
    rows &= rows - 1;
    if (static_cast<std::size_t>(r) < row_masks.size()) out |= row_masks[r];
  }
  return out;
}

std::uint64_t rows_within(std::span<const std::uint64_t> row_masks,
                          std::uint64_t cols) {
  std::uint64_t out = 0;
  for (std::size_t r = 0; r < row_masks.size(); ++r) {
    if ((row_masks[r] & ~cols) == 0) out |= std::uint64_t{1} << r;
  }
  return out;
}

}  // namespace chemlat::kernels::scalar
