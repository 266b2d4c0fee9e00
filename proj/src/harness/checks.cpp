#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "chemlat/checks.hpp"

namespace chemlat {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

CheckResult check_oscillation(const RunSeries& series, std::uint32_t n) {
  CheckResult r{"oscillation", "cluster_count alternates 1 <-> N with locked activity", false, {}};
  enum class Phase { unknown, aggregating, fragmenting } phase = Phase::unknown;
  std::size_t ones = 0, tops = 0;
  std::uint32_t prev = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::uint32_t c = series.cluster_count[i];
    const std::uint32_t a = series.active_count[i];
    const bool entered = i == 0 || c != prev;
    prev = c;
    if (entered && (c == 1 || c == n)) {
      const Phase next = c == 1 ? Phase::fragmenting : Phase::aggregating;
      if (phase == next) {
        r.detail = "cluster_count reached " + std::to_string(c) + " twice in a row at t=" +
                   std::to_string(series.t[i]);
        return r;
      }
      phase = next;
      ++(c == 1 ? ones : tops);
    }
    if (phase == Phase::aggregating && a != 0) {
      r.detail = "active_count " + std::to_string(a) + " while aggregating at t=" +
                 std::to_string(series.t[i]);
      return r;
    }
    if (phase == Phase::fragmenting && a != n) {
      r.detail = "active_count " + std::to_string(a) + " while fragmenting at t=" +
                 std::to_string(series.t[i]);
      return r;
    }
  }
  r.pass = ones >= 2 && tops >= 2;
  r.detail = std::to_string(ones) + " full aggregations, " + std::to_string(tops) +
             " full fragmentations";
  return r;
}

CheckResult check_lock_in(const RunSeries& series, std::uint32_t n) {
  const ExtremeVisits v = extreme_visits(series, n);
  CheckResult r{"lock_in", "no return to N clusters after the first full aggregation", false, {}};
  if (!v.first_one) {
    r.detail = "never fully aggregated";
    return r;
  }
  r.pass = v.to_n_after_first_one == 0;
  r.detail = "first aggregation t=" + std::to_string(*v.first_one) + ", " +
             std::to_string(v.to_n_after_first_one) + " later returns to N";
  return r;
}

CheckResult check_spike_generation(std::span<const WaveEvent> events, std::uint32_t n,
                                   std::size_t min_spikes) {
  CheckResult r{"spikes", "spikes of amplitude >= 0.8N in both directions", false, {}};
  const double amp = 0.8 * static_cast<double>(n);
  std::size_t up = 0, down = 0;
  for (const auto& e : events) {
    if (e.amplitude < amp) continue;
    if (e.kind == WaveKind::spike_up) ++up;
    if (e.kind == WaveKind::spike_down) ++down;
  }
  r.pass = up + down >= min_spikes && up > 0 && down > 0;
  r.detail = std::to_string(up) + " up, " + std::to_string(down) + " down (need >= " +
             std::to_string(min_spikes) + " total)";
  return r;
}

CheckResult check_slope_band(std::span<const double> slopes, double lo, double hi) {
  CheckResult r{"psd_slope", "mean log-log PSD slope within [" + fmt(lo) + ", " + fmt(hi) + "]",
                false, {}};
  if (slopes.empty()) {
    r.detail = "no slopes";
    return r;
  }
  const double mean = std::accumulate(slopes.begin(), slopes.end(), 0.0) /
                      static_cast<double>(slopes.size());
  r.pass = mean >= lo && mean <= hi;
  r.detail = "mean " + fmt(mean) + " over " + std::to_string(slopes.size()) + " run(s)";
  return r;
}

CheckResult check_ramp_order(const RunSeries& series, std::span<const WaveEvent> events,
                             std::uint32_t n, std::uint64_t window) {
  CheckResult r{"ramp_order", "oscillation, then sawtooth, then persistent spike dominance",
                false, {}};
  if (events.empty() || series.size() == 0) {
    r.detail = "no events";
    return r;
  }
  std::vector<WaveEvent> ev(events.begin(), events.end());
  std::stable_sort(ev.begin(), ev.end(),
                   [](const WaveEvent& a, const WaveEvent& b) { return a.t_start < b.t_start; });
  if (is_spike(ev.front().kind)) {
    r.detail = "first event is a spike at t=" + std::to_string(ev.front().t_peak);
    return r;
  }
  const std::uint64_t first_saw = ev.front().t_peak;

  RunSeries prefix;
  for (std::size_t i = 0; i < series.size() && series.t[i] < ev.front().t_start; ++i) {
    prefix.push(series.t[i], series.cluster_count[i], series.active_count[i],
                series.noise_trace[i]);
  }
  const ExtremeVisits pv = extreme_visits(prefix, n);
  if (pv.to_n_after_first_one == 0) {
    r.detail = "no complete oscillation before the first event";
    return r;
  }

  auto first_spike = std::find_if(ev.begin(), ev.end(),
                                  [](const WaveEvent& e) { return is_spike(e.kind); });
  if (first_spike == ev.end()) {
    r.detail = "no spike";
    return r;
  }
  if (first_spike->t_peak <= first_saw) {
    r.detail = "first spike does not follow the first sawtooth";
    return r;
  }

  const std::uint64_t t0 = series.t.front();
  const std::uint64_t t1 = series.t.back() + 1;
  std::optional<std::uint64_t> dominant_from;
  for (std::uint64_t lo = t0; lo < t1; lo += window) {
    const std::uint64_t hi = std::min(lo + window, t1);
    std::size_t spikes = 0, saws = 0;
    for (const auto& e : ev) {
      if (e.t_peak >= lo && e.t_peak < hi) (is_spike(e.kind) ? spikes : saws) += 1;
    }
    const bool dominant = spikes > saws;
    if (dominant && !dominant_from) dominant_from = lo;
    if (dominant_from && !dominant) {
      r.detail = "spike dominance lost in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                 "): " + std::to_string(spikes) + " spikes, " + std::to_string(saws) +
                 " sawtooths";
      return r;
    }
  }
  if (!dominant_from) {
    r.detail = "spikes never dominate";
    return r;
  }
  r.pass = true;
  r.detail = "oscillation until t=" + std::to_string(ev.front().t_start) + ", first sawtooth t=" +
             std::to_string(first_saw) + ", first spike t=" + std::to_string(first_spike->t_peak) +
             ", spike-dominant from t=" + std::to_string(*dominant_from);
  return r;
}

std::vector<CheckResult> check_sweep_regimes(std::span<const GridPoint> grid) {
  std::vector<CheckResult> out;
  auto find = [&](auto pred) -> const GridPoint* {
    for (const auto& p : grid) {
      if (pred(p.noise)) return &p;
    }
    return nullptr;
  };
  if (const GridPoint* p = find([](double v) { return v == 0.0; })) {
    bool cycling = true;
    for (const auto& run : p->runs) cycling = cycling && run.visits.to_one >= 2;
    out.push_back({"regime_zero", "no noise: pure oscillation, zero events",
                   p->events() == 0 && cycling,
                   std::to_string(p->events()) + " events over " + std::to_string(p->runs.size()) +
                       " runs" + (cycling ? "" : ", some run stopped cycling")});
  }
  if (const GridPoint* p = find([](double v) { return v > 0.0 && v < 1e-5; })) {
    out.push_back({"regime_lock_in", "tiny noise: no return to N after first aggregation",
                   p->locked_in_runs() == p->runs.size(),
                   std::to_string(p->locked_in_runs()) + "/" + std::to_string(p->runs.size()) +
                       " runs locked in at " + fmt(p->noise)});
  }
  if (const GridPoint* p = find([](double v) { return v >= 4e-3 && v <= 6e-3; })) {
    out.push_back({"regime_sawtooth", "sawtooth fraction exceeds spike fraction near 5e-3",
                   p->sawtooth_fraction() > p->spike_fraction(),
                   "sawtooth " + fmt(p->sawtooth_fraction()) + " vs spike " +
                       fmt(p->spike_fraction()) + " at " + fmt(p->noise)});
  }
  const GridPoint* top = nullptr;
  for (const auto& p : grid) {
    if (!top || p.noise > top->noise) top = &p;
  }
  if (top && top->noise >= 1e-2) {
    out.push_back({"regime_spike", "spike fraction exceeds sawtooth fraction at the top value",
                   top->spike_fraction() > top->sawtooth_fraction(),
                   "spike " + fmt(top->spike_fraction()) + " vs sawtooth " +
                       fmt(top->sawtooth_fraction()) + " at " + fmt(top->noise)});
  }
  return out;
}

namespace {

std::string labels(const std::vector<RowSet>& sets) {
  std::string s = "[";
  for (std::size_t i = 0; i < sets.size(); ++i) s += (i ? "," : "") + set_label(sets[i]);
  return s + "]";
}

RowSet rows(std::initializer_list<unsigned> one_based) {
  RowSet s;
  for (unsigned i : one_based) s = s | RowSet::of({i - 1});
  return s;
}

}  // namespace

std::vector<CheckResult> check_lattice_ground_truth(const std::string& builtin,
                                                    const LatticeOutcome& o) {
  std::vector<CheckResult> out;
  const Lattice& lat = o.lattice;
  if (builtin == "fig5-lattice") {
    out.push_back({"element_count", "two filled 4-blocks give 30 elements", lat.size() == 30,
                   std::to_string(lat.size()) + " elements"});
    const std::vector<RowSet> want{lat.bottom(), lat.top()};
    out.push_back({"shared", "blocks share only bottom and top", o.laws.shared == want,
                   labels(o.laws.shared)});
    bool witness_ok = false;
    if (const auto& w = o.laws.distributive.witness) {
      const auto [x, y, z] = *w;
      witness_ok = meet(lat, x, join(lat, y, z)) != join(lat, meet(lat, x, y), meet(lat, x, z));
    }
    out.push_back({"non_distributive", "distributive law fails with a valid witness",
                   !o.laws.distributive.distributive && witness_ok,
                   witness_ok ? "witness re-evaluated" : "no valid witness"});
    out.push_back({"orthomodular", "orthomodular under the found complement map",
                   o.laws.ortho.orthomodular(), ""});
  } else if (builtin == "fig4-lattice") {
    const Relation& rel = lat.relation;
    const RowSet s1 = rel.all_rows();
    struct Case {
      RowSet in, want;
    };
    const Case cases[] = {{rows({1}), rows({1})},
                          {rows({3}), rows({3})},
                          {rows({1, 2}), rows({1, 2, 4, 5})},
                          {rows({1, 6}), s1}};
    for (const auto& c : cases) {
      const RowSet got = closure(rel, c.in);
      out.push_back({"closure" + set_label(c.in),
                     "closure of " + set_label(c.in) + " is " + set_label(c.want), got == c.want,
                     set_label(got)});
    }
    const std::vector<RowSet> want{RowSet{}, rows({3}), rows({1, 2, 4, 5}), s1};
    std::vector<RowSet> got = o.laws.shared;
    out.push_back({"shared", "shared elements are {}, {A3}, {A1,A2,A4,A5}, S1", got == want,
                   labels(got)});
  }
  return out;
}

std::vector<CheckResult> check_run(const ScenarioConfig& config, const RunOutcome& run) {
  std::vector<CheckResult> out;
  const std::uint32_t n = config.sim.n_molecules;
  out.push_back({"audit", "state consistent at termination", run.audit.empty(),
                 run.audit.empty() ? "" : run.audit.front()});
  if (config.name == "fig9a") {
    out.push_back(check_oscillation(run.series, n));
  } else if (config.name == "fig9b" || config.name == "fig10") {
    const double slope = run.summary.slope.slope;
    CheckResult r = run.summary.slope_valid ? check_slope_band(std::span(&slope, 1))
                                            : CheckResult{"psd_slope", "PSD slope", false,
                                                          "no valid fit"};
    out.push_back(r);
  } else if (config.name == "fig9c") {
    out.push_back(check_spike_generation(run.events, n));
  } else if (config.name == "fig12") {
    out.push_back(check_ramp_order(run.series, run.events, n));
  }
  return out;
}

}  // namespace chemlat
