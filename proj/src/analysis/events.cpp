#include <algorithm>
#include <limits>

#include "chemlat/analysis.hpp"

namespace chemlat {

std::string_view to_string(WaveKind kind) {
  switch (kind) {
    case WaveKind::spike_up: return "spike_up";
    case WaveKind::spike_down: return "spike_down";
    case WaveKind::sawtooth_up: return "sawtooth_up";
    case WaveKind::sawtooth_down: return "sawtooth_down";
  }
  return "unknown";
}

DetectorConfig DetectorConfig::for_population(std::uint32_t n_molecules) {
  DetectorConfig cfg;
  cfg.min_amplitude = 0.8 * static_cast<double>(n_molecules);
  return cfg;
}

namespace {

// Least-squares decline of y over [a, b], as a positive number of units.
double fitted_decline(std::span<const double> y, std::size_t a, std::size_t b) {
  if (b <= a) return 0.0;
  const double m = static_cast<double>(b - a + 1);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t j = a; j <= b; ++j) {
    const double x = static_cast<double>(j - a);
    sx += x;
    sy += y[j];
    sxx += x * x;
    sxy += x * y[j];
  }
  const double den = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / den;
  return -slope * static_cast<double>(b - a);
}

// Upward excursions of y. `spike` and `sawtooth` are the kinds to report.
void detect_upward(std::span<const double> y, const DetectorConfig& cfg, std::uint64_t t0,
                   WaveKind spike, WaveKind sawtooth, std::vector<WaveEvent>& out) {
  const std::size_t n = y.size();
  const std::size_t lookback = std::size_t{cfg.rise_window} + cfg.fall_window;
  std::size_t i = 1;
  while (i < n) {
    const std::size_t from = i > lookback ? i - lookback : 0;
    double base = std::numeric_limits<double>::infinity();
    std::size_t t_start = from;
    for (std::size_t j = from; j < i; ++j) {
      if (y[j] <= base) {
        base = y[j];
        t_start = j;
      }
    }
    if (y[i] - base < cfg.min_amplitude) {
      ++i;
      continue;
    }

    // peak: highest point before the trace falls back through the midpoint
    // of the crossing amplitude, looking at most rise_window ahead
    const double cross_mid = base + 0.5 * (y[i] - base);
    std::size_t t_peak = i;
    const std::size_t peak_limit = std::min(n - 1, i + cfg.rise_window);
    for (std::size_t j = i + 1; j <= peak_limit && y[j] > cross_mid; ++j) {
      if (y[j] > y[t_peak]) t_peak = j;
    }
    const double peak = y[t_peak];
    const double mid = base + 0.5 * (peak - base);

    std::size_t t_mid = t_start;
    for (std::size_t j = t_peak; j > t_start; --j) {
      if (y[j - 1] <= mid) {
        t_mid = j - 1;
        break;
      }
    }
    if (t_peak - t_mid > cfg.rise_window) {
      ++i;
      continue;
    }

    std::size_t t_end = t_peak + 1;
    while (t_end < n && y[t_end] > mid) ++t_end;
    if (t_end >= n) break;  // excursion still open at the end of the trace

    const std::size_t fall = t_end - t_peak;
    const double amplitude = peak - base;
    if (fall <= cfg.fall_window) {
      out.push_back({spike, t0 + t_start, t0 + t_peak, t0 + t_end, amplitude});
    } else if (fitted_decline(y, t_peak, t_end - 1) >=
               cfg.min_decay_fraction * cfg.min_amplitude) {
      out.push_back({sawtooth, t0 + t_start, t0 + t_peak, t0 + t_end, amplitude});
    }
    i = t_end;
  }
}

}  // namespace

std::vector<WaveEvent> detect_events(std::span<const double> trace, const DetectorConfig& cfg,
                                     std::uint64_t t0) {
  std::vector<WaveEvent> events;
  detect_upward(trace, cfg, t0, WaveKind::spike_up, WaveKind::sawtooth_up, events);
  std::vector<double> negated(trace.size());
  std::transform(trace.begin(), trace.end(), negated.begin(), [](double v) { return -v; });
  detect_upward(negated, cfg, t0, WaveKind::spike_down, WaveKind::sawtooth_down, events);
  std::stable_sort(events.begin(), events.end(),
                   [](const WaveEvent& a, const WaveEvent& b) { return a.t_peak < b.t_peak; });
  return events;
}

std::vector<WaveEvent> detect_events(const RunSeries& series, const DetectorConfig& cfg) {
  std::vector<double> trace(series.active_count.begin(), series.active_count.end());
  const std::uint64_t t0 = series.t.empty() ? 0 : series.t.front();
  return detect_events(trace, cfg, t0);
}

}  // namespace chemlat
