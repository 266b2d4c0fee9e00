#include <doctest.h>

#include "chemlat/checks.hpp"
#include "chemlat/error.hpp"
#include "chemlat/harness.hpp"
#include "support.hpp"

using namespace chemlat;
using testing::slurp;
using testing::TempDir;

TEST_SUITE("harness") {
  TEST_CASE("minimal config takes defaults") {
    const ScenarioConfig c = parse_config_text(R"({"name": "tiny"})");
    CHECK(c.name == "tiny");
    CHECK(c.kind == ScenarioKind::single);
    CHECK(c.record_every == 1);
    CHECK(c.sim == SimParams{});
  }

  TEST_CASE("unknown keys are rejected by name") {
    try {
      parse_config_text("{\n  \"sim\": {\n    \"thetaC\": 0.5\n  }\n}");
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "sim.thetaC");
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text(R"({"thetaC": 0.5})"), ConfigError);
  }

  TEST_CASE("type and range errors name the field") {
    try {
      parse_config_text(R"({"sim": {"theta_c": 1.5}})");
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "sim.theta_c");
    }
    try {
      parse_config_text(R"({"record_every": "ten"})");
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "record_every");
    }
    CHECK_THROWS_AS(parse_config_text("{ nope"), ConfigError);
  }

  TEST_CASE("kind-specific fields") {
    CHECK_THROWS_AS(parse_config_text(R"({"sweep_values": [0.1]})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"kind": "sweep"})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"kind": "lattice"})"), ConfigError);
    CHECK_THROWS_AS(
        parse_config_text(R"({"kind": "lattice", "relation": "blocks=3", "sim": {}})"),
        ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"kind": "ramp"})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"relation": "blocks=3"})"), ConfigError);
    const ScenarioConfig ramp = parse_config_text(
        R"({"kind": "ramp", "sim": {"noise": {"kind": "ramp", "rate": 1e-6, "onset_step": 10}}})");
    CHECK(ramp.sim.noise == NoiseSchedule::ramp(0.0, 1e-6, 10));
    const ScenarioConfig s = parse_config_text(R"({"sim": {"noise": 0.05}})");
    CHECK(s.sim.noise == NoiseSchedule::constant(0.05));
  }

  TEST_CASE("builtins") {
    const auto fig12 = builtin_scenario("fig12");
    REQUIRE(fig12);
    CHECK(fig12->kind == ScenarioKind::ramp);
    CHECK(fig12->sim.interplay_enabled);
    CHECK(noise_at(fig12->sim.noise, 0) == 0.0);
    CHECK(noise_at(fig12->sim.noise, fig12->sim.noise.onset_step + 20000) ==
          doctest::Approx(0.05));

    const auto fig9c = builtin_scenario("fig9c");
    REQUIRE(fig9c);
    CHECK(fig9c->sim.theta_a == 0.3);
    CHECK(fig9c->sim.p_coh == 0.95);
    CHECK(fig9c->sim.noise == NoiseSchedule::constant(0.05));

    const auto fig11 = builtin_scenario("fig11");
    REQUIRE(fig11);
    CHECK(fig11->sweep_values == std::vector<double>{0.0, 1e-6, 5e-4, 5e-3, 7.5e-3, 5e-2});
    CHECK_FALSE(builtin_scenario("fig99"));
    for (const auto& n : builtin_names()) CHECK_NOTHROW(builtin_scenario(n)->validate());
  }

  TEST_CASE("base builtin with overrides") {
    const ScenarioConfig c =
        parse_config_text(R"({"base": "fig9c", "name": "mine", "sim": {"seed": 9}})");
    CHECK(c.name == "mine");
    CHECK(c.sim.seed == 9);
    CHECK(c.sim.interplay_enabled);
    CHECK_THROWS_AS(parse_config_text(R"({"base": "nope"})"), ConfigError);
  }

  TEST_CASE("config JSON round trip") {
    for (const auto& n : builtin_names()) {
      const ScenarioConfig c = *builtin_scenario(n);
      CHECK(parse_config_text(to_json(c).dump()) == c);
    }
  }

  TEST_CASE("series csv schema and thinning") {
    RunSeries s;
    for (std::uint64_t t = 0; t < 5; ++t) s.push(t, 10 - t, t, 0.05);
    CHECK(series_csv(s, 1) ==
          "t,cluster_count,active_count,noise_p\n0,10,0,0.05\n1,9,1,0.05\n2,8,2,0.05\n"
          "3,7,3,0.05\n4,6,4,0.05\n");
    CHECK(series_csv(s, 2) ==
          "t,cluster_count,active_count,noise_p\n0,10,0,0.05\n2,8,2,0.05\n4,6,4,0.05\n");
  }

  TEST_CASE("sha256") {
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }

  TEST_CASE("runs are byte-identical across repeats") {
    TempDir a("det_a"), b("det_b");
    ScenarioConfig c = *builtin_scenario("fig9c");
    c.sim.max_steps = 5000;
    c.output_dir = a.path;
    const Manifest ma = run_scenario(c);
    c.output_dir = b.path;
    const Manifest mb = run_scenario(c);
    REQUIRE(ma.files.size() == 2);
    for (std::size_t i = 0; i < ma.files.size(); ++i) {
      CHECK(ma.files[i].sha256 == mb.files[i].sha256);
      CHECK(slurp(a.path / ma.files[i].path) == slurp(b.path / mb.files[i].path));
      CHECK(sha256_hex(slurp(a.path / ma.files[i].path)) == ma.files[i].sha256);
    }
    CHECK(std::filesystem::exists(a.path / "manifest.json"));
  }

  TEST_CASE("lattice scenarios write their artifacts") {
    TempDir d("lat");
    ScenarioConfig c = *builtin_scenario("fig5-lattice");
    c.output_dir = d.path;
    const Manifest m = run_scenario(c);
    for (const char* f : {"lattice.dot", "laws.json", "summary.json"}) {
      CHECK(std::filesystem::exists(d.path / f));
    }
    CHECK(m.files.size() == 4);
    const auto laws = nlohmann::json::parse(slurp(d.path / "laws.json"));
    CHECK(laws["element_count"] == 30);
    CHECK(laws["shared"].size() == 2);
  }

  TEST_CASE("unwritable output is an I/O error") {
    ScenarioConfig c = *builtin_scenario("fig9a");
    c.sim.max_steps = 10;
    c.output_dir = "/proc/chemlat-cannot-write-here";
    CHECK_THROWS_AS(run_scenario(c), IoError);
  }

  TEST_CASE("sweep seeds do not depend on the grid size") {
    CHECK(sweep_seed(1, 0, 0) != sweep_seed(1, 1, 0));
    CHECK(sweep_seed(1, 0, 0) != sweep_seed(1, 0, 1));
    CHECK(sweep_seed(1, 3, 2) == sweep_seed(1, 3, 2));

    ScenarioConfig c = *builtin_scenario("fig11");
    c.sim.max_steps = 2000;
    c.sweep_values = {5e-2};
    c.replicates = 1;
    const auto one = simulate_sweep(c);
    REQUIRE(one.size() == 1);
    c.sweep_values = {5e-2, 5e-3};
    const auto two = simulate_sweep(c);
    CHECK(two[0].runs[0].seed == one[0].runs[0].seed);
    CHECK(two[0].spikes() == one[0].spikes());
  }

  TEST_CASE("sweep grid matches direct simulation") {
    TempDir d("sweep");
    ScenarioConfig c = *builtin_scenario("fig11");
    c.sim.max_steps = 20000;
    c.sweep_values = {5e-3, 5e-2};
    c.replicates = 5;
    c.output_dir = d.path;
    std::vector<GridPoint> grid;
    run_sweep(c, &grid);
    REQUIRE(grid.size() == 2);
    CHECK(std::filesystem::exists(d.path / "grid.json"));
    CHECK(std::filesystem::exists(d.path / "v1_r4" / "series.csv"));

    double fraction[2] = {0, 0};
    for (std::size_t i = 0; i < 2; ++i) {
      std::size_t spikes = 0, events = 0;
      for (std::uint32_t r = 0; r < 5; ++r) {
        const RunOutcome o = simulate(c, sweep_seed(c.sim.seed, i, r), c.sweep_values[i]);
        spikes += o.summary.spikes();
        events += o.summary.events();
      }
      fraction[i] = events ? static_cast<double>(spikes) / static_cast<double>(events) : 0.0;
      CHECK(grid[i].spike_fraction() == doctest::Approx(fraction[i]));
    }
    CHECK(fraction[1] > fraction[0]);
    const auto j = nlohmann::json::parse(slurp(d.path / "grid.json"));
    CHECK(j["points"][1]["spike_fraction"].get<double>() >
          j["points"][0]["spike_fraction"].get<double>());
  }

  TEST_CASE("every builtin finishes within budget with a consistent state") {
    for (const auto& n : builtin_names()) {
      CAPTURE(n);
      ScenarioConfig c = *builtin_scenario(n);
      if (c.kind == ScenarioKind::lattice) {
        CHECK_NOTHROW(analyze_relation(resolve_relation(c.relation_source)));
        continue;
      }
      if (c.kind == ScenarioKind::sweep) {
        c.sim.max_steps = 5000;
        c.replicates = 1;
        for (const auto& p : simulate_sweep(c)) CHECK(p.runs.size() == 1);
        continue;
      }
      const RunOutcome o = simulate(c);
      CHECK(o.series.size() == c.sim.max_steps);
      CHECK(o.audit.empty());
    }
  }

  TEST_CASE("checks on hand-made series") {
    RunSeries s;
    std::uint64_t t = 0;
    for (int cycle = 0; cycle < 3; ++cycle) {
      for (std::uint32_t c = 4; c >= 1; --c) s.push(t++, c, c == 1 ? 4 : 0, 0.0);
      for (std::uint32_t c = 2; c <= 4; ++c) s.push(t++, c, c == 4 ? 0 : 4, 0.0);
    }
    CHECK(check_oscillation(s, 4).pass);
    CHECK_FALSE(check_lock_in(s, 4).pass);
    s.active_count[2] = 1;
    CHECK_FALSE(check_oscillation(s, 4).pass);

    const std::vector<double> slopes{-1.0, -1.2};
    CHECK(check_slope_band(slopes).pass);
    const std::vector<double> flat{-0.2};
    CHECK_FALSE(check_slope_band(flat).pass);
  }
}
