#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "chemlat/error.hpp"
#include "chemlat/harness.hpp"

namespace chemlat {

using nlohmann::json;

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::single: return "single";
    case ScenarioKind::sweep: return "sweep";
    case ScenarioKind::ramp: return "ramp";
    case ScenarioKind::lattice: return "lattice";
  }
  return "unknown";
}

DetectorConfig AnalysisConfig::detector(std::uint32_t n_molecules) const {
  DetectorConfig d = DetectorConfig::for_population(n_molecules);
  if (rise_window) d.rise_window = *rise_window;
  if (fall_window) d.fall_window = *fall_window;
  if (min_amplitude) d.min_amplitude = *min_amplitude;
  return d;
}

void ScenarioConfig::validate() const {
  if (name.empty()) throw ConfigError("must not be empty", "name");
  if (record_every == 0) throw ConfigError("must be positive", "record_every");
  if (output_dir.empty()) throw ConfigError("must not be empty", "output_dir");

  const bool is_lattice = kind == ScenarioKind::lattice;
  if (is_lattice != !relation_source.empty()) {
    throw ConfigError(is_lattice ? "required for lattice scenarios"
                                 : "only allowed for lattice scenarios",
                      "relation");
  }
  if ((kind == ScenarioKind::sweep) == sweep_values.empty()) {
    throw ConfigError(kind == ScenarioKind::sweep ? "required for sweep scenarios"
                                                  : "only allowed for sweep scenarios",
                      "sweep_values");
  }
  if (replicates == 0) throw ConfigError("must be positive", "replicates");
  if (kind != ScenarioKind::sweep && replicates != 1) {
    throw ConfigError("only allowed for sweep scenarios", "replicates");
  }
  if (is_lattice) return;

  for (double v : sweep_values) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("values must lie in [0, 1]", "sweep_values");
  }
  if ((kind == ScenarioKind::ramp) != (sim.noise.kind == NoiseKind::ramp)) {
    throw ConfigError(kind == ScenarioKind::ramp ? "ramp scenarios need a ramp schedule"
                                                 : "ramp schedules need kind \"ramp\"",
                      "sim.noise.kind");
  }
  try {
    sim.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(e.what()).substr(e.field().size() + 2), "sim." + e.field());
  }
  if (!(analysis.band_lo > 0.0 && analysis.band_lo < analysis.band_hi &&
        analysis.band_hi <= 0.5)) {
    throw ConfigError("need 0 < lo < hi <= 0.5", "analysis.band");
  }
  if (analysis.rise_window && *analysis.rise_window == 0) {
    throw ConfigError("must be positive", "analysis.rise_window");
  }
  if (analysis.fall_window && *analysis.fall_window == 0) {
    throw ConfigError("must be positive", "analysis.fall_window");
  }
  if (analysis.min_amplitude && !(*analysis.min_amplitude >= 1.0)) {
    throw ConfigError("must be at least 1", "analysis.min_amplitude");
  }
}

// ---------------------------------------------------------------- builtins

namespace {

constexpr double kReferenceNoise = 0.05;

ScenarioConfig sim_scenario(std::string name, double noise, bool interplay,
                            std::uint64_t steps) {
  ScenarioConfig c;
  c.name = std::move(name);
  c.sim.noise = NoiseSchedule::constant(noise);
  c.sim.interplay_enabled = interplay;
  c.sim.max_steps = steps;
  c.output_dir = "out/" + c.name;
  return c;
}

ScenarioConfig lattice_scenario(std::string name, std::string source) {
  ScenarioConfig c;
  c.name = std::move(name);
  c.kind = ScenarioKind::lattice;
  c.relation_source = std::move(source);
  c.output_dir = "out/" + c.name;
  return c;
}

std::vector<ScenarioConfig> make_builtins() {
  std::vector<ScenarioConfig> all;
  all.push_back(sim_scenario("fig9a", 0.0, false, 100000));
  all.push_back(sim_scenario("fig9b", kReferenceNoise, false, 100000));
  all.push_back(sim_scenario("fig9c", kReferenceNoise, true, 100000));

  ScenarioConfig fig10 = sim_scenario("fig10", kReferenceNoise, false, 65536);
  fig10.analysis.burn_in = 1000;
  all.push_back(fig10);

  ScenarioConfig fig11 = sim_scenario("fig11", 0.0, true, 100000);
  fig11.kind = ScenarioKind::sweep;
  fig11.sweep_values = {0.0, 1e-6, 5e-4, 5e-3, 7.5e-3, 5e-2};
  fig11.replicates = 5;
  fig11.record_every = 10;
  all.push_back(fig11);

  // 0 -> 0.05 over 2e4 steps after a noise-free stretch of about four cycles
  ScenarioConfig fig12 = sim_scenario("fig12", 0.0, true, 25000);
  fig12.kind = ScenarioKind::ramp;
  fig12.sim.noise = NoiseSchedule::ramp(0.0, 2.5e-6, 5000);
  all.push_back(fig12);

  all.push_back(lattice_scenario("fig5-lattice", "blocks=4,4;fill"));
  all.push_back(lattice_scenario("fig4-lattice", "blocks=3,3,2;overlap=3;fill"));
  return all;
}

const std::vector<ScenarioConfig>& builtins() {
  static const std::vector<ScenarioConfig> all = make_builtins();
  return all;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& c : builtins()) n.push_back(c.name);
    return n;
  }();
  return names;
}

std::optional<ScenarioConfig> builtin_scenario(std::string_view name) {
  for (const auto& c : builtins()) {
    if (c.name == name) return c;
  }
  return std::nullopt;
}

// ----------------------------------------------------------------- parsing

namespace {

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Walks one JSON object, remembering which keys were consumed so that the
// leftovers can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path, std::string_view text)
      : obj_(obj), path_(std::move(path)), text_(text) {
    if (!obj_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
  }

  const json* take(const char* key) {
    auto it = obj_.find(key);
    if (it == obj_.end()) return nullptr;
    seen_.push_back(key);
    return &*it;
  }

  bool has(const char* key) const { return obj_.contains(key); }

  void read(const char* key, double& out) {
    if (const json* v = take(key)) {
      if (!v->is_number()) fail(field(key), "expected a number");
      out = v->get<double>();
    }
  }

  template <class U>
    requires std::is_unsigned_v<U>
  void read(const char* key, U& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_unsigned()) fail(field(key), "expected a non-negative integer");
      const auto raw = v->get<std::uint64_t>();
      if (raw > std::numeric_limits<U>::max()) fail(field(key), "value too large");
      out = static_cast<U>(raw);
    }
  }

  void read(const char* key, bool& out) {
    if (const json* v = take(key)) {
      if (!v->is_boolean()) fail(field(key), "expected true or false");
      out = v->get<bool>();
    }
  }

  void read(const char* key, std::string& out) {
    if (const json* v = take(key)) {
      if (!v->is_string()) fail(field(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end()) {
        fail(field(it.key()), "unknown key '" + it.key() + "'", it.key());
      }
    }
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  [[noreturn]] void fail(const std::string& field_path, const std::string& msg,
                         const std::string& locate = {}) const {
    std::string where;
    const std::string needle = "\"" + (locate.empty() ? last_segment(field_path) : locate) + "\"";
    if (const std::size_t pos = text_.find(needle); pos != std::string_view::npos) {
      where = " (line " + std::to_string(line_of_offset(text_, pos)) + ")";
    }
    throw ConfigError(msg + where, field_path);
  }

 private:
  static std::string last_segment(const std::string& path) {
    const std::size_t dot = path.rfind('.');
    return dot == std::string::npos ? path : path.substr(dot + 1);
  }

  const json& obj_;
  std::string path_;
  std::string_view text_;
  std::vector<std::string> seen_;
};

template <class Enum>
Enum parse_enum(ObjectReader& r, const char* key, Enum current,
                std::initializer_list<std::pair<const char*, Enum>> options) {
  std::string s;
  r.read(key, s);
  if (s.empty()) return current;
  for (const auto& [name, value] : options) {
    if (s == name) return value;
  }
  std::string allowed;
  for (const auto& [name, value] : options) allowed += (allowed.empty() ? "" : ", ") + std::string(name);
  r.fail(r.field(key), "expected one of " + allowed + ", got '" + s + "'");
}

void parse_noise(const json& v, const std::string& path, std::string_view text,
                 NoiseSchedule& out) {
  if (v.is_number()) {
    out = NoiseSchedule::constant(v.get<double>());
    return;
  }
  ObjectReader r(v, path, text);
  out.kind = parse_enum(r, "kind", out.kind,
                        {{"constant", NoiseKind::constant}, {"ramp", NoiseKind::ramp}});
  r.read("p0", out.p0);
  r.read("rate", out.rate);
  r.read("onset_step", out.onset_step);
  r.finish();
  if (out.kind == NoiseKind::constant && (out.rate != 0.0 || out.onset_step != 0)) {
    r.fail(path + ".rate", "rate/onset_step only apply to ramp schedules");
  }
}

void parse_sim(const json& v, std::string_view text, SimParams& sim) {
  ObjectReader r(v, "sim", text);
  r.read("n_molecules", sim.n_molecules);
  r.read("theta_c", sim.theta_c);
  r.read("theta_dec", sim.theta_dec);
  r.read("theta_a", sim.theta_a);
  r.read("p_coh", sim.p_coh);
  r.read("interplay_enabled", sim.interplay_enabled);
  sim.ratio_mode = parse_enum(r, "ratio_mode", sim.ratio_mode,
                              {{"pooled", RatioMode::pooled},
                               {"representative", RatioMode::representative}});
  r.read("max_steps", sim.max_steps);
  r.read("seed", sim.seed);
  if (const json* noise = r.take("noise")) parse_noise(*noise, "sim.noise", text, sim.noise);
  r.finish();
}

void parse_analysis(const json& v, std::string_view text, AnalysisConfig& a) {
  ObjectReader r(v, "analysis", text);
  a.trace = parse_enum(r, "trace", a.trace,
                       {{"active", SpectrumTrace::active}, {"clusters", SpectrumTrace::clusters}});
  if (const json* band = r.take("band")) {
    if (!band->is_array() || band->size() != 2 || !(*band)[0].is_number() ||
        !(*band)[1].is_number()) {
      r.fail("analysis.band", "expected [lo, hi]");
    }
    a.band_lo = (*band)[0].get<double>();
    a.band_hi = (*band)[1].get<double>();
  }
  r.read("burn_in", a.burn_in);
  if (r.has("rise_window")) {
    std::uint32_t w = 0;
    r.read("rise_window", w);
    a.rise_window = w;
  }
  if (r.has("fall_window")) {
    std::uint32_t w = 0;
    r.read("fall_window", w);
    a.fall_window = w;
  }
  if (r.has("min_amplitude")) {
    double m = 0;
    r.read("min_amplitude", m);
    a.min_amplitude = m;
  }
  r.finish();
}

}  // namespace

ScenarioConfig parse_config_text(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON at line " +
                          std::to_string(line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1)),
                      "<root>");
  }
  ObjectReader r(root, "", text);
  ScenarioConfig c;
  std::string base;
  r.read("base", base);
  if (!base.empty()) {
    auto b = builtin_scenario(base);
    if (!b) r.fail("base", "unknown builtin '" + base + "'");
    c = *b;
  }
  r.read("name", c.name);
  c.kind = parse_enum(r, "kind", c.kind,
                      {{"single", ScenarioKind::single},
                       {"sweep", ScenarioKind::sweep},
                       {"ramp", ScenarioKind::ramp},
                       {"lattice", ScenarioKind::lattice}});
  if (const json* sim = r.take("sim")) {
    if (c.kind == ScenarioKind::lattice) r.fail("sim", "not allowed for lattice scenarios");
    parse_sim(*sim, text, c.sim);
  }
  if (const json* values = r.take("sweep_values")) {
    if (!values->is_array()) r.fail("sweep_values", "expected an array of numbers");
    c.sweep_values.clear();
    for (const auto& v : *values) {
      if (!v.is_number()) r.fail("sweep_values", "expected an array of numbers");
      c.sweep_values.push_back(v.get<double>());
    }
  }
  r.read("replicates", c.replicates);
  r.read("relation", c.relation_source);
  std::string out_dir;
  r.read("output_dir", out_dir);
  if (!out_dir.empty()) c.output_dir = out_dir;
  r.read("record_every", c.record_every);
  if (const json* analysis = r.take("analysis")) {
    if (c.kind == ScenarioKind::lattice) r.fail("analysis", "not allowed for lattice scenarios");
    parse_analysis(*analysis, text, c.analysis);
  }
  r.finish();
  c.validate();
  return c;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

// ---------------------------------------------------------- serialization

json to_json(const SimParams& p) {
  json noise = {{"kind", p.noise.kind == NoiseKind::ramp ? "ramp" : "constant"},
                {"p0", p.noise.p0}};
  if (p.noise.kind == NoiseKind::ramp) {
    noise["rate"] = p.noise.rate;
    noise["onset_step"] = p.noise.onset_step;
  }
  return {{"n_molecules", p.n_molecules},
          {"theta_c", p.theta_c},
          {"theta_dec", p.theta_dec},
          {"theta_a", p.theta_a},
          {"p_coh", p.p_coh},
          {"interplay_enabled", p.interplay_enabled},
          {"ratio_mode", p.ratio_mode == RatioMode::pooled ? "pooled" : "representative"},
          {"max_steps", p.max_steps},
          {"seed", p.seed},
          {"noise", noise}};
}

json to_json(const ScenarioConfig& c) {
  json j = {{"name", c.name},
            {"kind", std::string(to_string(c.kind))},
            {"output_dir", c.output_dir.generic_string()},
            {"record_every", c.record_every}};
  if (c.kind == ScenarioKind::lattice) {
    j["relation"] = c.relation_source;
    return j;
  }
  j["sim"] = to_json(c.sim);
  if (c.kind == ScenarioKind::sweep) {
    j["sweep_values"] = c.sweep_values;
    j["replicates"] = c.replicates;
  }
  json a = {{"trace", c.analysis.trace == SpectrumTrace::active ? "active" : "clusters"},
            {"band", {c.analysis.band_lo, c.analysis.band_hi}},
            {"burn_in", c.analysis.burn_in}};
  if (c.analysis.rise_window) a["rise_window"] = *c.analysis.rise_window;
  if (c.analysis.fall_window) a["fall_window"] = *c.analysis.fall_window;
  if (c.analysis.min_amplitude) a["min_amplitude"] = *c.analysis.min_amplitude;
  j["analysis"] = a;
  return j;
}

}  // namespace chemlat
