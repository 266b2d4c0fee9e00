#include <algorithm>
#include <numeric>

#include "chemlat/analysis.hpp"
#include "chemlat/error.hpp"

namespace chemlat {

void RunSeries::reserve(std::size_t n) {
  t.reserve(n);
  cluster_count.reserve(n);
  active_count.reserve(n);
  noise_trace.reserve(n);
}

void RunSeries::push(std::uint64_t step, std::uint32_t clusters, std::uint32_t active,
                     double noise_p) {
  t.push_back(step);
  cluster_count.push_back(clusters);
  active_count.push_back(active);
  noise_trace.push_back(noise_p);
}

namespace {

TraceStats stats_of(const std::vector<std::uint32_t>& v) {
  TraceStats s;
  if (v.empty()) return s;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  s.min = *lo;
  s.max = *hi;
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  return s;
}

}  // namespace

RunSummary summarize(const RunSeries& series, std::span<const WaveEvent> events,
                     const Spectrum& spec, double band_lo, double band_hi) {
  RunSummary out;
  for (const auto& e : events) {
    switch (e.kind) {
      case WaveKind::spike_up: ++out.spike_up; break;
      case WaveKind::spike_down: ++out.spike_down; break;
      case WaveKind::sawtooth_up: ++out.sawtooth_up; break;
      case WaveKind::sawtooth_down: ++out.sawtooth_down; break;
    }
  }
  if (out.events() > 0) {
    out.spike_fraction = static_cast<double>(out.spikes()) / static_cast<double>(out.events());
    out.sawtooth_fraction =
        static_cast<double>(out.sawtooths()) / static_cast<double>(out.events());
  }
  out.band_lo = band_lo;
  out.band_hi = band_hi;
  if (!spec.freq.empty()) {
    try {
      out.slope = fit_loglog_slope(spec, band_lo, band_hi);
      out.slope_valid = true;
    } catch (const InputError&) {
      out.slope_valid = false;
    }
  }
  out.clusters = stats_of(series.cluster_count);
  out.active = stats_of(series.active_count);
  out.params = series.params_snapshot;
  return out;
}

}  // namespace chemlat
