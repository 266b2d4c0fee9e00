#include <cmath>

#include <doctest.h>

#include "chemlat/error.hpp"
#include "chemlat/interplay.hpp"
#include "support.hpp"

using namespace chemlat;
using testing::make_state;
using testing::singletons;

TEST_SUITE("interplay") {
  TEST_CASE("modal cluster") {
    SimState a = make_state({{0}, {1}, {2}, {3, 4, 5, 6, 7}}, std::vector<std::uint8_t>(8, 0));
    ModalCluster m = modal_cluster(a);
    CHECK(m.mode_size == 1);
    CHECK(m.representative == 0);

    SimState b = make_state({{0, 1, 2}, {3, 4}, {5, 6, 7}, {8, 9}}, std::vector<std::uint8_t>(10, 0));
    m = modal_cluster(b);
    CHECK(m.mode_size == 2);
    CHECK(m.representative == 1);

    SimState c = make_state({{0, 1, 2, 3}}, std::vector<std::uint8_t>(4, 0));
    m = modal_cluster(c);
    CHECK(m.mode_size == 4);
    CHECK(m.representative == 0);
  }

  TEST_CASE("active ratio") {
    SimState s = make_state({{0, 1}, {2, 3}, {4, 5, 6, 7}}, {0, 0, 1, 1, 1, 0, 0, 0});
    CHECK(active_ratio(s, 0) == 0.0);
    CHECK(active_ratio(s, 1) == 1.0);
    CHECK(active_ratio(s, 2) == 0.25);
    CHECK(pooled_active_ratio(s, 2) == 0.5);
  }

  TEST_CASE("coherence target is a step at one half") {
    CHECK(coherence_target(0.3) == 1);
    CHECK(coherence_target(0.5) == 0);
    CHECK(coherence_target(0.7) == 0);
    CHECK(in_coherence_band(0.3, 0.3));
    CHECK(in_coherence_band(0.7, 0.3));
    CHECK_FALSE(in_coherence_band(0.29, 0.3));
  }

  TEST_CASE("certain kick makes the population uniform") {
    std::vector<std::uint8_t> half(200, 0);
    for (int k = 0; k < 100; ++k) half[k] = 1;
    SimState s = make_state(singletons(200), half);
    CHECK(coherence_kick(s, 0.3, 1.0, 0.3) == 100);
    CHECK(s.active_count() == 200);
    CHECK(audit_consistency(s).empty());

    SimState t = make_state(singletons(200), half);
    coherence_kick(t, 0.7, 1.0, 0.3);
    CHECK(t.active_count() == 0);
  }

  TEST_CASE("kick outside the band is rejected without mutation") {
    SimState s = make_state(singletons(4), {1, 0, 1, 0});
    const SimState before = s;
    CHECK_THROWS_AS(coherence_kick(s, 0.1, 1.0, 0.3), DomainError);
    CHECK(s == before);
  }

  TEST_CASE("kick changes follow the binomial mean") {
    std::vector<std::uint8_t> half(200, 0);
    for (int k = 100; k < 200; ++k) half[k] = 1;
    const SimState base = make_state(singletons(200), half, 77);
    SimState s = base;
    const int reps = 10000;
    double total = 0;
    for (int i = 0; i < reps; ++i) {
      s.m1 = base.m1;
      recount_active(s);
      total += static_cast<double>(coherence_kick(s, 0.3, 0.95, 0.3));
    }
    // mean 95, sd of the average ~ 0.022
    CHECK(std::abs(total / reps - 95.0) < 0.1);
  }

  TEST_CASE("interplay without noise leaves the oscillation untouched") {
    SimParams off;
    SimParams on = off;
    on.interplay_enabled = true;
    SimState a = init_state(off);
    SimState b = init_state(on);
    for (int i = 0; i < 20000; ++i) {
      step(a, off);
      const StepReport r = step(b, on);
      REQUIRE(r.interplay.has_value());
      REQUIRE_FALSE(r.interplay->kicked);
      REQUIRE(a.c0 == b.c0);
      REQUIRE(a.m1 == b.m1);
    }
  }

  TEST_CASE("run_interplay reports the band decision") {
    // three singletons, two active: modal size 1, pooled ratio 2/3
    SimState s = make_state(singletons(3), {1, 1, 0});
    SimParams p;
    p.n_molecules = 3;
    p.p_coh = 1.0;
    p.theta_a = 0.3;
    p.ratio_mode = RatioMode::pooled;
    const InterplayOutcome o = run_interplay(s, p);
    CHECK(o.mode_size == 1);
    CHECK(o.kicked);
    CHECK(o.target_value == 0);
    CHECK(s.active_count() == 0);

    SimState r = make_state(singletons(3), {1, 1, 0});
    p.ratio_mode = RatioMode::representative;
    const InterplayOutcome rep = run_interplay(r, p);
    CHECK(rep.r_a == 1.0);
    CHECK_FALSE(rep.kicked);
  }
}
