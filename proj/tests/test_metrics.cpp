#include <doctest.h>

#include "fairdiv/metrics.hpp"
#include "fairdiv/oracles.hpp"
#include "support.hpp"

using namespace fairdiv;
using fdtest::R;

TEST_CASE("social welfare") {
  const auto inst = generate_adversarial({"ef1-unscaled", 3, {}});
  CHECK(social_welfare(inst, Allocation({{0, 1, 2}, {}, {}})) == R(9));
  const auto b = generate_adversarial({"prop1-scaled", 4, {}});
  // Goods 1..4 split between the two high agents, good 5 to a low agent.
  CHECK(social_welfare(b, Allocation({{0, 1}, {2, 3}, {4}, {}})) == R(2) + R(1, 5));
  CHECK_THROWS_AS(social_welfare(inst, Allocation({{0}, {0}, {}})), std::invalid_argument);
}

TEST_CASE("EF1 verdicts and witnesses") {
  const auto inst = generate_adversarial({"ef1-unscaled", 3, {}});
  CHECK(is_ef1(inst, Allocation({{0}, {1}, {2}})).holds);
  CHECK(is_ef1(inst, Allocation(3)).holds);
  const Allocation hog({{0, 1, 2}, {}, {}});
  const auto v = is_ef1(inst, hog);
  REQUIRE_FALSE(v.holds);
  CHECK(v.violation->agent == 1);
  CHECK(*v.violation->other == 0);
  CHECK(v.violation->removals.size() == 3);
  CHECK(witness_confirms(inst, hog, PropertyKind::ef1, *v.violation));
  const auto j = verdict_to_json(v);
  CHECK(j["witness"]["agent"] == 2);
  CHECK(j["witness"]["other"] == 1);
}

TEST_CASE("Prop1 verdicts") {
  const auto single = generate_random(1, 4, Distribution::uniform_rational, 3);
  CHECK(is_prop1(single, Allocation({{0, 1, 2, 3}})).holds);
  const auto inst = generate_adversarial({"prop1-unscaled", 3, {}});
  const Allocation hog({{0, 1, 2, 3}, {}, {}});
  const auto v = is_prop1(inst, hog);
  REQUIRE_FALSE(v.holds);
  CHECK(v.violation->agent == 1);
  CHECK(witness_confirms(inst, hog, PropertyKind::prop1, *v.violation));
}

TEST_CASE("Prop1 with a scope uses the scoped threshold") {
  const auto inst = fdtest::additive({{R(3), R(2), R(1), R(0)}, {R(3), R(2), R(1), R(0)}});
  const Prop1Scope scope{{0, 1}, {1, 2, 3}};
  // Threshold (2 + 1 + 0) / 2; agent 2 holds nothing but can add good 2.
  CHECK(is_prop1(inst, Allocation({{2, 3}, {}}), scope).holds);
  const Prop1Scope narrow{{0, 1}, {2, 3}};
  CHECK(is_prop1(inst, Allocation({{}, {}}), narrow).holds);
}

TEST_CASE("alpha-MMS verdicts") {
  const auto inst = generate_adversarial({"mms-unscaled", 3, R(1, 10)});
  const auto profile = mms_profile(inst);
  CHECK(is_alpha_mms(inst, Allocation({{0}, {1}, {2}}), R(1, 2), profile).holds);
  CHECK(is_alpha_mms(inst, Allocation({{0, 1, 2}, {}, {}}), R(0), profile).holds);
  const auto sq = generate_adversarial({"mms-scaled-sqrt", 4, {}});
  const auto sp = mms_profile(sq);
  const Allocation starve({{0, 1}, {2, 3}, {}, {}});
  const auto v = is_alpha_mms(sq, starve, R(1, 2), sp);
  REQUIRE_FALSE(v.holds);
  CHECK(v.violation->agent == 2);
  CHECK(witness_confirms(sq, starve, PropertyKind::alpha_mms, *v.violation));
  MmsProfile short_profile = sp;
  short_profile.mms.pop_back();
  CHECK_THROWS_AS(is_alpha_mms(sq, starve, R(1, 2), short_profile), std::invalid_argument);
}

TEST_CASE("EF1 and Prop1 agree with literal double loops on every small allocation") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 1 + seed % 3, m = 1 + seed % 5;
    const auto inst = seed % 3 == 2 ? generate_random_subadditive(n, m, seed)
                                    : generate_random(n, m, Distribution::uniform_rational, seed);
    fdtest::for_each_assignment(n, m, [&](const std::vector<std::size_t>& d) {
      const Allocation a = fdtest::to_allocation(n, d);
      const auto ef1 = is_ef1(inst, a);
      const auto prop1 = is_prop1(inst, a);
      CHECK(ef1.holds == fdtest::brute_ef1(inst, a));
      CHECK(prop1.holds == fdtest::brute_prop1(inst, a));
      if (inst.additive() && ef1.holds) CHECK(prop1.holds);
      if (!ef1.holds) CHECK(witness_confirms(inst, a, PropertyKind::ef1, *ef1.violation));
      if (!prop1.holds) CHECK(witness_confirms(inst, a, PropertyKind::prop1, *prop1.violation));
    });
  }
}

TEST_CASE("tampered witnesses are rejected") {
  const auto inst = generate_adversarial({"ef1-unscaled", 3, {}});
  const Allocation hog({{0, 1, 2}, {}, {}});
  auto w = *is_ef1(inst, hog).violation;
  w.removals[0].residual += R(1);
  CHECK_FALSE(witness_confirms(inst, hog, PropertyKind::ef1, w));
}
