#pragma once
// Data-parallel inner loops shared by the simulator, the spectral
// estimator and the lattice closure. Every kernel has a scalar reference
// implementation; vector variants must produce bit-identical results.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace chemlat::kernels {

// bits[i] ^= 1 wherever u[i] < p. Returns the number of flipped entries.
using FlipBelowFn = std::size_t (*)(std::span<std::uint8_t> bits,
                                    std::span<const double> u, double p);
// bits[i] = value wherever u[i] < p. Returns the number of entries whose
// value actually changed.
using AssignBelowFn = std::size_t (*)(std::span<std::uint8_t> bits,
                                      std::span<const double> u, double p,
                                      std::uint8_t value);
using CountNonzeroFn = std::size_t (*)(std::span<const std::uint8_t> bits);
// out[i] = a[i] * b[i]
using MultiplyFn = void (*)(std::span<const double> a,
                            std::span<const double> b, std::span<double> out);
// acc[i] += re[i]*re[i] + im[i]*im[i], evaluated without fused multiply-add.
using AccumulatePowerFn = void (*)(std::span<const double> re,
                                   std::span<const double> im,
                                   std::span<double> acc);
// Union of row masks selected by `rows`. row_masks.size() <= 64.
using UnionRowsFn = std::uint64_t (*)(std::span<const std::uint64_t> row_masks,
                                      std::uint64_t rows);
// Bitmask of rows whose mask is contained in `cols`. row_masks.size() <= 64.
using RowsWithinFn = std::uint64_t (*)(std::span<const std::uint64_t> row_masks,
                                       std::uint64_t cols);

struct KernelTable {
  std::string_view name;
  FlipBelowFn flip_below;
  AssignBelowFn assign_below;
  CountNonzeroFn count_nonzero;
  MultiplyFn multiply;
  AccumulatePowerFn accumulate_power;
  UnionRowsFn union_rows;
  RowsWithinFn rows_within;
};

const KernelTable& scalar_kernels();

// Returns nullptr when the binary was built without AVX2 support or the
// running CPU lacks it.
const KernelTable* avx2_kernels();

// Best table for this CPU. Setting CHEMLAT_KERNELS=scalar in the
// environment forces the reference path.
const KernelTable& active();

}  // namespace chemlat::kernels
