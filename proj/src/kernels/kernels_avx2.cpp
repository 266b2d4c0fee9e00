// Built with -mavx2 only; the dispatcher calls into this file after a
// runtime CPU check. No FMA: results must match the scalar reference bit for bit.
#include "kernels_impl.hpp"

#include <immintrin.h>

#include <array>
#include <bit>
#include <cstring>

namespace chemlat::kernels::avx2 {
namespace {

// byte i of kSpread[m] is 1 iff bit i of m is set
constexpr std::array<std::uint64_t, 256> make_spread() {
  std::array<std::uint64_t, 256> t{};
  for (std::size_t m = 0; m < 256; ++m) {
    std::uint64_t w = 0;
    for (int i = 0; i < 8; ++i) {
      if ((m >> i) & 1u) w |= std::uint64_t{1} << (8 * i);
    }
    t[m] = w;
  }
  return t;
}
constexpr auto kSpread = make_spread();

inline unsigned below_mask8(const double* u, __m256d pv) {
  const __m256d lo = _mm256_loadu_pd(u);
  const __m256d hi = _mm256_loadu_pd(u + 4);
  const unsigned mlo =
      static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(lo, pv, _CMP_LT_OQ)));
  const unsigned mhi =
      static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(hi, pv, _CMP_LT_OQ)));
  return mlo | (mhi << 4);
}

}  // namespace

std::size_t flip_below(std::span<std::uint8_t> bits, std::span<const double> u,
                       double p) {
  const std::size_t n = bits.size();
  const __m256d pv = _mm256_set1_pd(p);
  std::size_t flips = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const unsigned m = below_mask8(u.data() + i, pv);
    if (m == 0) continue;
    std::uint64_t w;
    std::memcpy(&w, bits.data() + i, 8);
    w ^= kSpread[m];
    std::memcpy(bits.data() + i, &w, 8);
    flips += static_cast<std::size_t>(std::popcount(m));
  }
  return flips + scalar::flip_below(bits.subspan(i), u.subspan(i), p);
}

std::size_t assign_below(std::span<std::uint8_t> bits,
                         std::span<const double> u, double p,
                         std::uint8_t value) {
  const std::size_t n = bits.size();
  const __m256d pv = _mm256_set1_pd(p);
  const std::uint64_t fill = std::uint64_t{value} * 0x0101010101010101ull;
  std::size_t changed = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const unsigned m = below_mask8(u.data() + i, pv);
    if (m == 0) continue;
    const std::uint64_t sel = kSpread[m] * 0xFFu;
    std::uint64_t w;
    std::memcpy(&w, bits.data() + i, 8);
    const std::uint64_t next = (w & ~sel) | (fill & sel);
    // one bit per differing byte
    std::uint64_t diff = w ^ next;
    diff |= diff >> 4;
    diff |= diff >> 2;
    diff |= diff >> 1;
    changed += static_cast<std::size_t>(std::popcount(diff & 0x0101010101010101ull));
    std::memcpy(bits.data() + i, &next, 8);
  }
  return changed + scalar::assign_below(bits.subspan(i), u.subspan(i), p, value);
}

std::size_t count_nonzero(std::span<const std::uint8_t> bits) {
  const std::size_t n = bits.size();
  const __m256i zero = _mm256_setzero_si256();
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bits.data() + i));
    const auto zeros =
        static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, zero)));
    count += 32 - static_cast<std::size_t>(std::popcount(zeros));
  }
  return count + scalar::count_nonzero(bits.subspan(i));
}

void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i),
                                                   _mm256_loadu_pd(b.data() + i)));
  }
  scalar::multiply(a.subspan(i), b.subspan(i), out.subspan(i));
}

void accumulate_power(std::span<const double> re, std::span<const double> im,
                      std::span<double> acc) {
  const std::size_t n = acc.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(re.data() + i);
    const __m256d m = _mm256_loadu_pd(im.data() + i);
    const __m256d s = _mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(m, m));
    _mm256_storeu_pd(acc.data() + i, _mm256_add_pd(_mm256_loadu_pd(acc.data() + i), s));
  }
  scalar::accumulate_power(re.subspan(i), im.subspan(i), acc.subspan(i));
}

std::uint64_t union_rows(std::span<const std::uint64_t> row_masks,
                         std::uint64_t rows) {
  const std::size_t n = row_masks.size();
  const __m256i lane_bits = _mm256_set_epi64x(8, 4, 2, 1);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const auto nibble = static_cast<long long>((rows >> i) & 0xFu);
    if (nibble == 0) continue;
    const __m256i sel = _mm256_cmpeq_epi64(
        _mm256_and_si256(_mm256_set1_epi64x(nibble), lane_bits), lane_bits);
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row_masks.data() + i));
    acc = _mm256_or_si256(acc, _mm256_and_si256(v, sel));
  }
  alignas(32) std::array<std::uint64_t, 4> lanes{};
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes.data()), acc);
  std::uint64_t out = lanes[0] | lanes[1] | lanes[2] | lanes[3];
  if (i < n) out |= scalar::union_rows(row_masks.subspan(i), rows >> i);
  return out;
}

std::uint64_t rows_within(std::span<const std::uint64_t> row_masks,
                          std::uint64_t cols) {
  const std::size_t n = row_masks.size();
  const __m256i cv = _mm256_set1_epi64x(static_cast<long long>(cols));
  const __m256i zero = _mm256_setzero_si256();
  std::uint64_t out = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row_masks.data() + i));
    const __m256i outside = _mm256_andnot_si256(cv, v);
    const auto m = static_cast<std::uint64_t>(
        _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(outside, zero))));
    out |= m << i;
  }
  if (i < n) out |= scalar::rows_within(row_masks.subspan(i), cols) << i;
  return out;
}

}  // namespace chemlat::kernels::avx2
