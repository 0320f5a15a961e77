#include <doctest.h>

#include "fairdiv/metrics.hpp"
#include "fairdiv/mms.hpp"
#include "support.hpp"

using namespace fairdiv;
using fdtest::R;

TEST_CASE("round robin") {
  const auto inst = fdtest::additive({{R(3), R(2), R(1)}, {R(1), R(2), R(3)}});
  CHECK(prop1_subroutine(inst, {0, 1}, {0, 1, 2}) == Allocation({{0, 1}, {2}}));
  CHECK(prop1_subroutine(inst, {1}, {0, 2}) == Allocation({{}, {0, 2}}));
  CHECK(prop1_subroutine(inst, {}, {}) == Allocation(2));
  CHECK_THROWS_AS(prop1_subroutine(inst, {}, {0}), std::invalid_argument);
}

TEST_CASE("round robin is Prop1 on its scope") {
  for (const auto& e : fdtest::additive_corpus(120, 70)) {
    const auto& inst = e.instance;
    std::vector<Agent> agents;
    for (Agent i = 0; i < inst.n(); i += 2) agents.push_back(i);
    Bundle goods;
    for (Good g = 1; g < inst.m(); ++g) goods.push_back(g);
    const auto a = prop1_subroutine(inst, agents, goods);
    CHECK(is_prop1(inst, a, Prop1Scope{agents, goods}).holds);
  }
}

TEST_CASE("absolute-welfare MMS picks") {
  const auto inst = generate_adversarial({"mms-unscaled", 3, R(1, 10)});
  const auto r = alg_mms_abs(inst);
  REQUIRE(r.picks.size() == 3);
  CHECK(r.picks[0].agent == 0);
  CHECK(r.picks[0].good == 0);
  CHECK(r.picks[0].active == 3);
  CHECK(r.picks[1].agent == 1);
  CHECK(r.picks[2].active == 1);
  CHECK(r.allocation == Allocation({{0}, {1}, {2}}));
  CHECK(r.prop1_agents.empty());
  CHECK_FALSE(check_val_share(inst, r).has_value());

  const auto left = fdtest::additive({{R(1), R(0), R(0)}, {R(0), R(1), R(1)}});
  const auto l = alg_mms_abs(left);
  CHECK(l.leftover == Bundle{2});
  CHECK(l.allocation == Allocation({{0}, {1, 2}}));

  const auto one = fdtest::additive({{R(1), R(1), R(1)}});
  const auto o = alg_mms_abs(one);
  CHECK(o.picks.empty());
  CHECK(o.prop1_agents == std::vector<Agent>{0});
  CHECK(o.allocation == Allocation({{0, 1, 2}}));
}

TEST_CASE("MMS solvers reject what they cannot handle") {
  const auto sub = generate_random_subadditive(2, 3, 1);
  CHECK_THROWS_AS(alg_mms_abs(sub), std::invalid_argument);
  const auto uns = generate_random(2, 3, Distribution::uniform_rational, 1);
  CHECK_THROWS_AS(alg_mms_high(uns, mms_profile(uns)), std::invalid_argument);
}

TEST_CASE("high-welfare MMS on the sqrt family") {
  const auto inst = generate_adversarial({"mms-scaled-sqrt", 4, {}});
  const auto profile = mms_profile(inst);
  CHECK(profile.mms == std::vector<Rational>{R(0), R(0), R(1, 4), R(1, 4)});
  const auto h = alg_mms_high(inst, profile, true);
  CHECK(h.covers_all_agents());
  CHECK(h.t_size() * h.t_size() <= 16 * inst.n());
  CHECK(is_alpha_mms(inst, h.allocation, R(1, 2), profile).holds);
  for (Agent i = 2; i < 4; ++i) CHECK_FALSE(h.allocation.bundles[i].empty());
  CHECK_FALSE(h.trace.empty());
}

TEST_CASE("half-MMS solvers on random instances") {
  for (const auto& e : fdtest::additive_corpus(150, 8000)) {
    const auto& inst = e.instance;
    if (inst.n() > 4 || inst.m() > 8) continue;
    const auto s = solve_half_mms(inst, R(0), nullptr, {}, true);
    const auto profile = mms_profile(inst);
    CHECK(s.allocation.complete(inst.m()));
    CHECK(is_alpha_mms(inst, s.allocation, R(1, 2), profile).holds);
    CHECK(is_alpha_mms(inst, s.abs.allocation, R(1, 2), profile).holds);
    CHECK_FALSE(check_val_share(inst, s.abs).has_value());
    CHECK(s.welfare == fdtest::welfare_of(inst, s.allocation));
    if (s.high) {
      CHECK(s.high->covers_all_agents());
      CHECK(s.high->t_size() * s.high->t_size() <= 16 * inst.n());
      CHECK(is_alpha_mms(inst, s.high->allocation, R(1, 2), profile).holds);
    }
  }
}

TEST_CASE("degraded estimates still give half of the estimate") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = generate_random(2 + seed % 3, 4 + seed % 5, Distribution::dirichlet_scaled, seed);
    const auto s = solve_half_mms(inst, R(1, 10), nullptr, {}, true);
    REQUIRE(s.profile.has_value());
    CHECK(s.profile->estimates[0] == R(9, 10) * s.profile->mms[0]);
    for (Agent i = 0; i < inst.n(); ++i)
      CHECK(R(2) * inst.valuation(i).value(s.allocation.bundles[i]) >= s.profile->estimates[i]);
  }
}
