// chemlat: scenario runner for the cluster simulator and the relation lattice.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "chemlat/checks.hpp"
#include "chemlat/error.hpp"
#include "chemlat/harness.hpp"
#include "chemlat/kernels.hpp"

namespace {

using namespace chemlat;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitCheck = 4;

constexpr const char* kConfigHelp = R"(Config files are JSON objects. Keys (defaults in brackets):
  base            builtin scenario to start from, other keys override it
  name            ["custom"]
  kind            single | sweep | ramp | lattice  [single]
  output_dir      ["out"]
  record_every    keep every k-th step in series.csv  [1]
  sim.n_molecules [200]   sim.theta_c [0.5]   sim.theta_dec [0.5]
  sim.theta_a     [0.3]   sim.p_coh [0.95]    sim.interplay_enabled [false]
  sim.ratio_mode  pooled | representative  [pooled]
  sim.max_steps   recorded steps  [100000]    sim.seed [1]
  sim.noise       number, or {kind: constant|ramp, p0, rate, onset_step}  [0]
  sweep_values    noise values (sweep only)   replicates [1] (sweep only)
  relation        relation file or "blocks=4,4;fill" spec (lattice only)
  analysis.trace  active | clusters  [active]  analysis.band [[0.001, 0.1]]
  analysis.burn_in [0]  analysis.rise_window [25]  analysis.fall_window [25]
  analysis.min_amplitude [0.8 * n_molecules]
Unknown keys are rejected.
Exit codes: 0 ok, 2 config error, 3 runtime error, 4 --check failed.)";

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> steps;
  std::optional<std::string> out;
  std::optional<std::uint64_t> record_every;
  bool check = false;
};

ScenarioConfig load(const std::string& target) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(target, ec)) return parse_config(target);
  if (auto b = builtin_scenario(target)) return *b;
  std::string names;
  for (const auto& n : builtin_names()) names += " " + n;
  throw ConfigError("not a config file or builtin (builtins:" + names + ")", "scenario");
}

void apply(ScenarioConfig& c, const Overrides& o) {
  if (o.seed) c.sim.seed = *o.seed;
  if (o.steps) c.sim.max_steps = *o.steps;
  if (o.out) c.output_dir = *o.out;
  if (o.record_every) c.record_every = *o.record_every;
  c.validate();
}

void print_manifest(const Manifest& m) {
  for (const auto& f : m.files) {
    std::cout << (m.output_dir / f.path).generic_string() << "  " << f.bytes << " B  "
              << f.sha256.substr(0, 16) << "\n";
  }
}

int report(const std::vector<CheckResult>& checks) {
  bool ok = true;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.id << ": " << c.description;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
    ok = ok && c.pass;
  }
  if (checks.empty()) std::cout << "no checks defined for this scenario\n";
  return ok ? kExitOk : kExitCheck;
}

int cmd_run(const std::string& target, const Overrides& o, bool sweep_only) {
  ScenarioConfig c = load(target);
  apply(c, o);
  if (sweep_only && c.kind != ScenarioKind::sweep) {
    throw ConfigError("scenario '" + c.name + "' is not a sweep", "kind");
  }
  switch (c.kind) {
    case ScenarioKind::sweep: {
      std::vector<GridPoint> grid;
      print_manifest(run_sweep(c, &grid));
      return o.check ? report(check_sweep_regimes(grid)) : kExitOk;
    }
    case ScenarioKind::lattice: {
      const LatticeOutcome out = analyze_relation(resolve_relation(c.relation_source));
      print_manifest(write_lattice_artifacts(c, out));
      return o.check ? report(check_lattice_ground_truth(c.name, out)) : kExitOk;
    }
    case ScenarioKind::single:
    case ScenarioKind::ramp:
      break;
  }
  const RunOutcome run = simulate(c);
  print_manifest(write_run_artifacts(c, run));
  return o.check ? report(check_run(c, run)) : kExitOk;
}

int cmd_lattice(const std::string& source, const Overrides& o) {
  ScenarioConfig c;
  if (auto b = builtin_scenario(source); b && b->kind == ScenarioKind::lattice) {
    c = *b;
  } else {
    c.kind = ScenarioKind::lattice;
    c.name = "lattice";
    c.relation_source = source;
    c.output_dir = "out/lattice";
  }
  if (o.out) c.output_dir = *o.out;
  c.validate();
  const LatticeOutcome out = analyze_relation(resolve_relation(c.relation_source));
  print_manifest(write_lattice_artifacts(c, out));
  std::cout << out.lattice.size() << " elements, " << out.lattice.covers.size() << " covers\n";
  return o.check ? report(check_lattice_ground_truth(c.name, out)) : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster activity simulator and relation-lattice analyzer"};
  app.footer(kConfigHelp);
  app.require_subcommand(1);

  Overrides o;
  std::string target;
  auto add_common = [&](CLI::App* sub, bool sim_flags) {
    if (sim_flags) {
      sub->add_option("--seed", o.seed, "Master seed");
      sub->add_option("--steps", o.steps, "Recorded steps per run");
      sub->add_option("--record-every", o.record_every, "Keep every k-th step in series.csv")
          ->check(CLI::PositiveNumber);
    }
    sub->add_option("--out", o.out, "Output directory");
    sub->add_flag("--check", o.check, "Evaluate the scenario's acceptance checks (exit 4 on failure)");
  };

  auto* run = app.add_subcommand("run", "Run a config file or builtin scenario");
  run->add_option("scenario", target, "Config path or builtin name")->required();
  add_common(run, true);

  auto* sweep = app.add_subcommand("sweep", "Run a noise sweep (config path or builtin)");
  sweep->add_option("scenario", target, "Config path or builtin name")->required();
  add_common(sweep, true);

  auto* lattice = app.add_subcommand("lattice", "Enumerate the lattice of a relation");
  lattice->add_option("relation", target, "Relation file, generator spec or builtin")->required();
  add_common(lattice, false);

  app.add_subcommand("list", "List builtin scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (app.got_subcommand("list")) {
      for (const auto& n : builtin_names()) {
        const auto c = *builtin_scenario(n);
        std::cout << n << "  " << to_string(c.kind) << "\n";
      }
      return kExitOk;
    }
    std::cerr << "kernels: " << kernels::active().name << "\n";
    if (app.got_subcommand("lattice")) return cmd_lattice(target, o);
    return cmd_run(target, o, app.got_subcommand("sweep"));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
