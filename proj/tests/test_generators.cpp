#include <doctest.h>

#include "fairdiv/oracles.hpp"
#include "support.hpp"

using namespace fairdiv;
using fdtest::R;

TEST_CASE("adversarial families build valid instances") {
  for (const auto& f : adversarial_families())
    for (std::size_t n : {4u, 9u}) {
      if (f == "supermodular" && n > 9) continue;
      const auto inst = generate_adversarial({f, n, {}});
      CHECK(inst.n() == n);
    }
  CHECK_THROWS_AS(generate_adversarial({"nope", 3, {}}), std::invalid_argument);
  CHECK_THROWS_AS(generate_adversarial({"prop1-scaled", 5, {}}), std::invalid_argument);
  CHECK_THROWS_AS(generate_adversarial({"supermodular", 1, {}}), std::invalid_argument);
  CHECK_THROWS_AS(generate_adversarial({"mms-unscaled", 3, R(1)}), std::invalid_argument);
}

TEST_CASE("family shapes") {
  const auto e = generate_adversarial({"ef1-unscaled", 5, {}});
  CHECK(e.m() == 5);
  CHECK_FALSE(e.scaled());
  CHECK(fdtest::brute_opt(generate_adversarial({"ef1-unscaled", 3, {}})) == R(9));
  CHECK(max_welfare(e).welfare == R(25));

  const auto p = generate_adversarial({"prop1-unscaled", 3, {}});
  CHECK(p.m() == 4);
  CHECK(p.valuation(0).good_value(0) == R(4));
  CHECK(p.valuation(2).good_value(3) == R(1, 4));

  const auto q = generate_adversarial({"prop1-scaled", 9, {}});
  CHECK(q.scaled());
  CHECK(q.m() == 10);
  CHECK(q.valuation(1).good_value(3) == R(1, 3));
  CHECK(q.valuation(1).good_value(2).is_zero());
  CHECK(q.valuation(5).good_value(9) == R(1, 10));

  const auto s = generate_adversarial({"supermodular", 4, R(1, 100)});
  CHECK(s.scaled());
  CHECK_FALSE(s.additive());
  CHECK(is_supermodular(s.valuation(0)));
  CHECK_FALSE(s.valuation(0).claims_subadditive());
  CHECK(s.valuation(0).value(Bundle{2}) == R(1, 100));
  CHECK(s.valuation(0).value(Bundle{0, 1, 2, 3}) == R(1));

  const auto u = generate_adversarial({"mms-unscaled", 3, {}});
  CHECK(u.valuation(1).good_value(0) == R(1, 100));
}

TEST_CASE("random generators are deterministic and valid") {
  for (auto d : {Distribution::uniform_rational, Distribution::dirichlet_scaled}) {
    CHECK(parse_distribution(distribution_name(d)) == d);
    const auto a = generate_random(4, 7, d, 42);
    CHECK(a == generate_random(4, 7, d, 42));
    CHECK_FALSE(a == generate_random(4, 7, d, 43));
  }
  CHECK_THROWS_AS(parse_distribution("gaussian"), std::invalid_argument);
  const auto sc = generate_random(5, 9, Distribution::dirichlet_scaled, 3);
  CHECK(sc.scaled());
  for (Agent i = 0; i < 5; ++i) CHECK(sc.valuation(i).total() == R(1));
  const auto un = generate_random(3, 4, Distribution::uniform_rational, 3);
  for (Agent i = 0; i < 3; ++i)
    for (Good g = 0; g < 4; ++g) {
      CHECK(un.valuation(i).good_value(g) >= R(0));
      CHECK(un.valuation(i).good_value(g) <= R(1));
    }
  const auto sub = generate_random_subadditive(3, 5, 9);
  CHECK(sub == generate_random_subadditive(3, 5, 9));
  CHECK(sub.valuation(0).claims_subadditive());
}

TEST_CASE("rescaling") {
  const auto un = generate_random(3, 4, Distribution::uniform_rational, 8);
  const auto sc = un.rescaled();
  CHECK(sc.scaled());
  for (Agent i = 0; i < 3; ++i) CHECK(sc.valuation(i).total() == R(1));
}
