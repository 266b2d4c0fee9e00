#pragma once

#include "chemlat/kernels.hpp"

namespace chemlat::kernels {

namespace scalar {
std::size_t flip_below(std::span<std::uint8_t>, std::span<const double>, double);
std::size_t assign_below(std::span<std::uint8_t>, std::span<const double>,
                         double, std::uint8_t);
std::size_t count_nonzero(std::span<const std::uint8_t>);
void multiply(std::span<const double>, std::span<const double>,
              std::span<double>);
void accumulate_power(std::span<const double>, std::span<const double>,
                      std::span<double>);
std::uint64_t union_rows(std::span<const std::uint64_t>, std::uint64_t);
std::uint64_t rows_within(std::span<const std::uint64_t>, std::uint64_t);
}  // namespace scalar

#if defined(CHEMLAT_HAVE_AVX2)
namespace avx2 {
std::size_t flip_below(std::span<std::uint8_t>, std::span<const double>, double);
std::size_t assign_below(std::span<std::uint8_t>, std::span<const double>,
                         double, std::uint8_t);
std::size_t count_nonzero(std::span<const std::uint8_t>);
void multiply(std::span<const double>, std::span<const double>,
              std::span<double>);
void accumulate_power(std::span<const double>, std::span<const double>,
                      std::span<double>);
std::uint64_t union_rows(std::span<const std::uint64_t>, std::uint64_t);
std::uint64_t rows_within(std::span<const std::uint64_t>, std::uint64_t);
}  // namespace avx2
#endif

}  // namespace chemlat::kernels
