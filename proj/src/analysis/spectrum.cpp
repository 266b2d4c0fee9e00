#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "chemlat/analysis.hpp"
#include "chemlat/error.hpp"
#include "chemlat/kernels.hpp"

namespace chemlat {

void fft_radix2(std::span<std::complex<double>> data) {
  const std::size_t n = data.size();
  if (n == 0 || !std::has_single_bit(n)) {
    throw InputError("fft_radix2: length must be a power of two");
  }
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::size_t half = len / 2;
    for (std::size_t k = 0; k < half; ++k) {
      // twiddles from the angle directly; recurrence drifts at large n
      const std::complex<double> w(std::cos(ang * static_cast<double>(k)),
                                   std::sin(ang * static_cast<double>(k)));
      for (std::size_t i = k; i < n; i += len) {
        const std::complex<double> u = data[i];
        const std::complex<double> v = data[i + half] * w;
        data[i] = u + v;
        data[i + half] = u - v;
      }
    }
  }
}

Spectrum psd(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 256) throw InputError("psd: need at least 256 samples");
  const std::size_t seg = std::bit_floor(n / 4);
  const std::size_t hop = seg / 2;
  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);

  std::vector<double> window(seg);
  double wsum2 = 0.0;
  for (std::size_t i = 0; i < seg; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                     static_cast<double>(seg));
    wsum2 += window[i] * window[i];
  }

  const auto& k = kernels::active();
  const std::size_t nbins = seg / 2;  // bins 1..seg/2
  std::vector<double> acc(nbins, 0.0);
  std::vector<double> centered(seg), tapered(seg), re(nbins), im(nbins);
  std::vector<std::complex<double>> buf(seg);
  std::size_t segments = 0;
  for (std::size_t start = 0; start + seg <= n; start += hop) {
    for (std::size_t i = 0; i < seg; ++i) centered[i] = series[start + i] - mean;
    k.multiply(centered, window, tapered);
    for (std::size_t i = 0; i < seg; ++i) buf[i] = {tapered[i], 0.0};
    fft_radix2(buf);
    for (std::size_t b = 0; b < nbins; ++b) {
      re[b] = buf[b + 1].real();
      im[b] = buf[b + 1].imag();
    }
    k.accumulate_power(re, im, acc);
    ++segments;
  }

  Spectrum out;
  out.n_segments = segments;
  out.segment_length = seg;
  out.freq.resize(nbins);
  out.power.resize(nbins);
  const double norm = 1.0 / (static_cast<double>(segments) * static_cast<double>(seg) * wsum2);
  for (std::size_t b = 0; b < nbins; ++b) {
    const std::size_t bin = b + 1;
    out.freq[b] = static_cast<double>(bin) / static_cast<double>(seg);
    const double one_sided = bin == seg / 2 ? 1.0 : 2.0;
    out.power[b] = acc[b] * norm * one_sided;
  }
  return out;
}

SlopeFit fit_loglog_slope(const Spectrum& spec, double f_lo, double f_hi) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < spec.freq.size(); ++i) {
    const double f = spec.freq[i];
    if (f < f_lo || f > f_hi || !(spec.power[i] > 0.0)) continue;
    xs.push_back(std::log10(f));
    ys.push_back(std::log10(spec.power[i]));
  }
  const std::size_t m = xs.size();
  if (m < 8) {
    throw InputError("fit_loglog_slope: band holds " + std::to_string(m) +
                     " bins, need at least 8");
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(m);
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  SlopeFit fit;
  fit.n_bins = m;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    sse += r * r;
  }
  fit.stderr_slope = std::sqrt(sse / static_cast<double>(m - 2) / sxx);
  return fit;
}

}  // namespace chemlat
