#include <algorithm>
#include <charconv>
#include <fstream>

#include <openssl/evp.h>

#include "chemlat/error.hpp"
#include "chemlat/harness.hpp"
#include "chemlat/lattice_io.hpp"
#include "chemlat/rng.hpp"
#include "chemlat/sim.hpp"

namespace chemlat {

using nlohmann::json;

ExtremeVisits extreme_visits(const RunSeries& series, std::uint32_t n) {
  ExtremeVisits v;
  std::uint32_t prev = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::uint32_t c = series.cluster_count[i];
    const bool entered = i == 0 || c != prev;
    if (entered && c == 1) {
      ++v.to_one;
      if (!v.first_one) v.first_one = series.t[i];
    }
    if (entered && c == n) {
      ++v.to_n;
      if (v.first_one) ++v.to_n_after_first_one;
    }
    prev = c;
  }
  return v;
}

std::size_t GridPoint::spikes() const {
  std::size_t s = 0;
  for (const auto& r : runs) s += r.summary.spikes();
  return s;
}

std::size_t GridPoint::sawtooths() const {
  std::size_t s = 0;
  for (const auto& r : runs) s += r.summary.sawtooths();
  return s;
}

double GridPoint::spike_fraction() const {
  return events() ? static_cast<double>(spikes()) / static_cast<double>(events()) : 0.0;
}

double GridPoint::sawtooth_fraction() const {
  return events() ? static_cast<double>(sawtooths()) / static_cast<double>(events()) : 0.0;
}

std::size_t GridPoint::locked_in_runs() const {
  return static_cast<std::size_t>(
      std::count_if(runs.begin(), runs.end(), [](const GridRun& r) { return r.locked_in; }));
}

// ------------------------------------------------------------- simulation

RunOutcome simulate(const ScenarioConfig& config) {
  const double p = config.sim.noise.kind == NoiseKind::constant ? config.sim.noise.p0 : 0.0;
  return simulate(config, config.sim.seed, p);
}

RunOutcome simulate(const ScenarioConfig& config, std::uint64_t seed, double constant_noise) {
  SimParams params = config.sim;
  params.seed = seed;
  if (params.noise.kind == NoiseKind::constant) params.noise = NoiseSchedule::constant(constant_noise);
  params.validate();

  RunOutcome out;
  SimState state = init_state(params);
  for (std::uint64_t i = 0; i < config.analysis.burn_in; ++i) step(state, params);

  out.series.params_snapshot = params;
  out.series.reserve(params.max_steps);
  for (std::uint64_t i = 0; i < params.max_steps; ++i) {
    const StepReport r = step(state, params);
    out.series.push(r.t, state.c_max(), state.active_count(), r.noise_p);
  }
  out.audit = audit_consistency(state);

  out.events = detect_events(out.series, config.analysis.detector(params.n_molecules));
  const auto& src = config.analysis.trace == SpectrumTrace::active ? out.series.active_count
                                                                   : out.series.cluster_count;
  if (src.size() >= 256) {
    const std::vector<double> trace(src.begin(), src.end());
    out.spectrum = psd(trace);
  }
  out.summary = summarize(out.series, out.events, out.spectrum, config.analysis.band_lo,
                          config.analysis.band_hi);
  return out;
}

std::uint64_t sweep_seed(std::uint64_t master, std::size_t value_index, std::uint32_t replicate) {
  return mix_seed(mix_seed(master, value_index), replicate);
}

std::vector<GridPoint> simulate_sweep(const ScenarioConfig& config, const RunSink& sink) {
  if (config.kind != ScenarioKind::sweep) throw ConfigError("not a sweep scenario", "kind");
  config.validate();
  std::vector<GridPoint> grid;
  const std::uint32_t n = config.sim.n_molecules;
  for (std::size_t i = 0; i < config.sweep_values.size(); ++i) {
    GridPoint point;
    point.noise = config.sweep_values[i];
    for (std::uint32_t r = 0; r < config.replicates; ++r) {
      GridRun run;
      run.replicate = r;
      run.seed = sweep_seed(config.sim.seed, i, r);
      RunOutcome outcome = simulate(config, run.seed, point.noise);
      run.summary = outcome.summary;
      run.visits = extreme_visits(outcome.series, n);
      run.locked_in = run.visits.first_one.has_value() && run.visits.to_n_after_first_one == 0;
      if (sink) sink(i, run, outcome);
      point.runs.push_back(std::move(run));
    }
    grid.push_back(std::move(point));
  }
  return grid;
}

// ----------------------------------------------------------------- lattice

Relation resolve_relation(std::string_view source) {
  if (auto b = builtin_scenario(source); b && b->kind == ScenarioKind::lattice) {
    const BlockSpec spec = parse_block_spec(b->relation_source);
    return build_block_relation(spec.sizes, spec.overlap, spec.fill);
  }
  if (source.starts_with("blocks=")) {
    const BlockSpec spec = parse_block_spec(source);
    return build_block_relation(spec.sizes, spec.overlap, spec.fill);
  }
  return read_relation_file(std::filesystem::path(source));
}

LatticeOutcome analyze_relation(const Relation& rel) {
  LatticeOutcome out;
  out.lattice = enumerate_lattice(rel);
  out.laws = analyze_laws(out.lattice);
  return out;
}

// ----------------------------------------------------------------- output

namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

json stats_json(const TraceStats& s) { return {{"min", s.min}, {"max", s.max}, {"mean", s.mean}}; }

json event_timeline(const RunOutcome& run, std::size_t segments) {
  json arr = json::array();
  if (run.series.size() == 0) return arr;
  const std::uint64_t t0 = run.series.t.front();
  const std::uint64_t span = run.series.t.back() - t0 + 1;
  for (std::size_t k = 0; k < segments; ++k) {
    const std::uint64_t lo = t0 + span * k / segments;
    const std::uint64_t hi = t0 + span * (k + 1) / segments;
    std::size_t spikes = 0, saws = 0;
    for (const auto& e : run.events) {
      if (e.t_peak < lo || e.t_peak >= hi) continue;
      (is_spike(e.kind) ? spikes : saws) += 1;
    }
    arr.push_back({{"t_from", lo}, {"t_to", hi}, {"spikes", spikes}, {"sawtooths", saws}});
  }
  return arr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

ManifestEntry write_file(const std::filesystem::path& root, const std::string& rel,
                         const std::string& content) {
  const std::filesystem::path path = root / rel;
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
  return {rel, content.size(), sha256_hex(content)};
}

}  // namespace

std::string series_csv(const RunSeries& series, std::uint64_t record_every) {
  std::string out = "t,cluster_count,active_count,noise_p\n";
  out.reserve(out.size() + series.size() / std::max<std::uint64_t>(record_every, 1) * 24);
  for (std::size_t i = 0; i < series.size(); i += record_every) {
    out += std::to_string(series.t[i]);
    out += ',';
    out += std::to_string(series.cluster_count[i]);
    out += ',';
    out += std::to_string(series.active_count[i]);
    out += ',';
    append_double(out, series.noise_trace[i]);
    out += '\n';
  }
  return out;
}

json summary_json(const ScenarioConfig& config, const RunOutcome& run) {
  const RunSummary& s = run.summary;
  const ExtremeVisits v = extreme_visits(run.series, run.series.params_snapshot.n_molecules);
  json first = json::object();
  for (WaveKind k : {WaveKind::spike_up, WaveKind::spike_down, WaveKind::sawtooth_up,
                     WaveKind::sawtooth_down}) {
    auto it = std::find_if(run.events.begin(), run.events.end(),
                           [k](const WaveEvent& e) { return e.kind == k; });
    first[std::string(to_string(k))] = it == run.events.end() ? json(nullptr) : json(it->t_peak);
  }
  json slope = {{"valid", s.slope_valid},
                {"trace", config.analysis.trace == SpectrumTrace::active ? "active" : "clusters"},
                {"band", {s.band_lo, s.band_hi}}};
  if (s.slope_valid) {
    slope["value"] = s.slope.slope;
    slope["stderr"] = s.slope.stderr_slope;
    slope["n_bins"] = s.slope.n_bins;
  }
  return {{"scenario", config.name},
          {"kind", std::string(to_string(config.kind))},
          {"steps_recorded", run.series.size()},
          {"burn_in", config.analysis.burn_in},
          {"counts",
           {{"spike_up", s.spike_up},
            {"spike_down", s.spike_down},
            {"sawtooth_up", s.sawtooth_up},
            {"sawtooth_down", s.sawtooth_down}}},
          {"spike_fraction", s.spike_fraction},
          {"sawtooth_fraction", s.sawtooth_fraction},
          {"first_event_t", first},
          {"event_timeline", event_timeline(run, 10)},
          {"psd_slope", slope},
          {"cluster_count", stats_json(s.clusters)},
          {"active_count", stats_json(s.active)},
          {"extreme_visits",
           {{"full_aggregation", v.to_one},
            {"full_fragmentation", v.to_n},
            {"full_fragmentation_after_first_aggregation", v.to_n_after_first_one}}},
          {"audit_violations", run.audit},
          {"params", to_json(run.series.params_snapshot)}};
}

json to_json(const Manifest& m) {
  json files = json::array();
  for (const auto& f : m.files) {
    files.push_back({{"path", f.path}, {"bytes", f.bytes}, {"sha256", f.sha256}});
  }
  return {{"scenario", m.scenario}, {"files", files}};
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

namespace {

Manifest finish_manifest(const ScenarioConfig& config, std::vector<ManifestEntry> files) {
  Manifest m{config.name, config.output_dir, std::move(files)};
  write_file(config.output_dir, "manifest.json", dump(to_json(m)));
  return m;
}

}  // namespace

Manifest run_sweep(const ScenarioConfig& config, std::vector<GridPoint>* grid_out) {
  std::vector<ManifestEntry> files;
  auto sink = [&](std::size_t index, const GridRun& run, const RunOutcome& outcome) {
    const std::string dir = "v" + std::to_string(index) + "_r" + std::to_string(run.replicate);
    ScenarioConfig sub = config;
    sub.name = config.name + "/" + dir;
    files.push_back(write_file(config.output_dir, dir + "/series.csv",
                               series_csv(outcome.series, config.record_every)));
    files.push_back(
        write_file(config.output_dir, dir + "/summary.json", dump(summary_json(sub, outcome))));
  };
  const std::vector<GridPoint> grid = simulate_sweep(config, sink);

  json points = json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const GridPoint& p = grid[i];
    json runs = json::array();
    for (const auto& r : p.runs) {
      runs.push_back({{"replicate", r.replicate},
                      {"seed", r.seed},
                      {"dir", "v" + std::to_string(i) + "_r" + std::to_string(r.replicate)},
                      {"spikes", r.summary.spikes()},
                      {"sawtooths", r.summary.sawtooths()},
                      {"locked_in", r.locked_in}});
    }
    points.push_back({{"index", i},
                      {"noise", p.noise},
                      {"spikes", p.spikes()},
                      {"sawtooths", p.sawtooths()},
                      {"spike_fraction", p.spike_fraction()},
                      {"sawtooth_fraction", p.sawtooth_fraction()},
                      {"locked_in_runs", p.locked_in_runs()},
                      {"runs", runs}});
  }
  json grid_json = {{"scenario", config.name},
                    {"master_seed", config.sim.seed},
                    {"replicates", config.replicates},
                    {"points", points}};
  files.push_back(write_file(config.output_dir, "grid.json", dump(grid_json)));
  if (grid_out) *grid_out = grid;
  return finish_manifest(config, std::move(files));
}

Manifest write_run_artifacts(const ScenarioConfig& config, const RunOutcome& run) {
  std::vector<ManifestEntry> files;
  files.push_back(
      write_file(config.output_dir, "series.csv", series_csv(run.series, config.record_every)));
  files.push_back(write_file(config.output_dir, "summary.json", dump(summary_json(config, run))));
  return finish_manifest(config, std::move(files));
}

Manifest write_lattice_artifacts(const ScenarioConfig& config, const LatticeOutcome& out) {
  const Relation& rel = out.lattice.relation;
  const json summary = {{"scenario", config.name},
                        {"kind", "lattice"},
                        {"relation", config.relation_source},
                        {"n_rows", rel.n_rows()},
                        {"n_cols", rel.n_cols()},
                        {"element_count", out.lattice.size()},
                        {"cover_count", out.lattice.covers.size()}};
  std::vector<ManifestEntry> files;
  files.push_back(write_file(config.output_dir, "relation.txt", format_relation(rel)));
  files.push_back(write_file(config.output_dir, "lattice.dot", to_dot(out.lattice)));
  files.push_back(
      write_file(config.output_dir, "laws.json", dump(laws_to_json(out.lattice, out.laws))));
  files.push_back(write_file(config.output_dir, "summary.json", dump(summary)));
  return finish_manifest(config, std::move(files));
}

Manifest run_scenario(const ScenarioConfig& config) {
  config.validate();
  switch (config.kind) {
    case ScenarioKind::sweep:
      return run_sweep(config);
    case ScenarioKind::lattice:
      return write_lattice_artifacts(config,
                                     analyze_relation(resolve_relation(config.relation_source)));
    case ScenarioKind::single:
    case ScenarioKind::ramp:
      break;
  }
  return write_run_artifacts(config, simulate(config));
}

}  // namespace chemlat
