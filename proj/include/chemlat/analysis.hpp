#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "chemlat/params.hpp"

namespace chemlat {

// Per-step trajectory of one run.
struct RunSeries {
  std::vector<std::uint64_t> t;
  std::vector<std::uint32_t> cluster_count;
  std::vector<std::uint32_t> active_count;
  std::vector<double> noise_trace;
  SimParams params_snapshot;

  std::size_t size() const { return t.size(); }
  void reserve(std::size_t n);
  void push(std::uint64_t step, std::uint32_t clusters, std::uint32_t active, double noise_p);
};

// One-sided power spectrum in cycles/step, DC excluded. power[i] is the
// share of variance in bin i, so the bins sum to roughly the variance.
struct Spectrum {
  std::vector<double> freq;
  std::vector<double> power;
  std::size_t n_segments = 0;
  std::size_t segment_length = 0;
};

// In-place iterative radix-2 transform; data.size() must be a power of two.
void fft_radix2(std::span<std::complex<double>> data);

// Welch estimate: mean removed, 50%-overlapping Hann segments of the
// largest power-of-two length <= size/4. Throws InputError below 256 samples.
Spectrum psd(std::span<const double> series);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  std::size_t n_bins = 0;
};

// Least squares of log10(power) on log10(freq) over bins in [f_lo, f_hi].
// Throws InputError when fewer than 8 usable bins fall in the band.
SlopeFit fit_loglog_slope(const Spectrum& spec, double f_lo, double f_hi);

enum class WaveKind { spike_up, spike_down, sawtooth_up, sawtooth_down };

std::string_view to_string(WaveKind kind);
inline bool is_spike(WaveKind k) { return k == WaveKind::spike_up || k == WaveKind::spike_down; }

struct WaveEvent {
  WaveKind kind;
  std::uint64_t t_start;
  std::uint64_t t_peak;
  std::uint64_t t_end;
  double amplitude;
  bool operator==(const WaveEvent&) const = default;
};

struct DetectorConfig {
  std::uint32_t rise_window = 25;
  std::uint32_t fall_window = 25;
  double min_amplitude = 160.0;
  // A slow return counts as a sawtooth only if the trace declines by at
  // least this fraction of min_amplitude between peak and return;
  // otherwise it is a plateau (square wave) and not an event.
  double min_decay_fraction = 0.2;

  static DetectorConfig for_population(std::uint32_t n_molecules);
};

// Excursions of the trace away from its local baseline. Upward events are
// found directly, downward ones on the negated trace. Event times are
// indices into `trace` offset by `t0`.
std::vector<WaveEvent> detect_events(std::span<const double> trace,
                                     const DetectorConfig& cfg,
                                     std::uint64_t t0 = 0);

// Same, on the active-molecule trace of a run.
std::vector<WaveEvent> detect_events(const RunSeries& series, const DetectorConfig& cfg);

struct TraceStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct RunSummary {
  std::size_t spike_up = 0;
  std::size_t spike_down = 0;
  std::size_t sawtooth_up = 0;
  std::size_t sawtooth_down = 0;
  double spike_fraction = 0.0;
  double sawtooth_fraction = 0.0;
  bool slope_valid = false;
  SlopeFit slope;
  double band_lo = 1e-3;
  double band_hi = 1e-1;
  TraceStats clusters;
  TraceStats active;
  SimParams params;

  std::size_t spikes() const { return spike_up + spike_down; }
  std::size_t sawtooths() const { return sawtooth_up + sawtooth_down; }
  std::size_t events() const { return spikes() + sawtooths(); }
};

// Event counts, spike/sawtooth fractions of all events, PSD slope over the
// band (slope_valid is false when the spectrum is empty or the band too
// narrow) and min/max/mean of both traces.
RunSummary summarize(const RunSeries& series, std::span<const WaveEvent> events,
                     const Spectrum& spec, double band_lo = 1e-3, double band_hi = 1e-1);

}  // namespace chemlat
