#include "fairdiv/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace fairdiv {

namespace {

Rational frac(long p, long q) { return Rational(p, q); }

std::vector<Rational> repeat(std::size_t m, const Rational& x) { return std::vector<Rational>(m, x); }

Instance ef1_unscaled(std::size_t n) {
  const long ln = static_cast<long>(n);
  std::vector<Valuation> vals;
  vals.push_back(Valuation::additive(repeat(n, Rational(ln))));
  for (std::size_t i = 1; i < n; ++i) vals.push_back(Valuation::additive(repeat(n, frac(1, ln))));
  return Instance(std::move(vals), n, false);
}

Instance mms_unscaled(std::size_t n, const Rational& eps) {
  std::vector<Valuation> vals;
  vals.push_back(Valuation::additive(repeat(n, Rational(1))));
  for (std::size_t i = 1; i < n; ++i) vals.push_back(Valuation::additive(repeat(n, eps)));
  return Instance(std::move(vals), n, false);
}

Instance mms_scaled_sqrt(std::size_t n) {
  const std::size_t s = isqrt(n);
  std::vector<Valuation> vals;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> v(n);
    if (i < s) {
      for (std::size_t g = i * s; g < (i + 1) * s; ++g) v[g] = frac(1, static_cast<long>(s));
    } else {
      v = repeat(n, frac(1, static_cast<long>(n)));
    }
    vals.push_back(Valuation::additive(std::move(v)));
  }
  return Instance(std::move(vals), n, true);
}

Instance prop1_unscaled(std::size_t n) {
  const long k = static_cast<long>(n) + 1;
  std::vector<Valuation> vals;
  vals.push_back(Valuation::additive(repeat(n + 1, Rational(k))));
  for (std::size_t i = 1; i < n; ++i) vals.push_back(Valuation::additive(repeat(n + 1, frac(1, k))));
  return Instance(std::move(vals), n + 1, false);
}

Instance prop1_scaled(std::size_t n) {
  const std::size_t s = isqrt(n);
  if (s * s != n) throw std::invalid_argument("prop1-scaled requires a perfect-square n");
  std::vector<Valuation> vals;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> v(n + 1);
    if (i < s) {
      for (std::size_t g = i * s; g < (i + 1) * s; ++g) v[g] = frac(1, static_cast<long>(s));
    } else {
      v = repeat(n + 1, frac(1, static_cast<long>(n) + 1));
    }
    vals.push_back(Valuation::additive(std::move(v)));
  }
  return Instance(std::move(vals), n + 1, true);
}

Instance supermodular(std::size_t n, const Rational& eps) {
  if (n < 2) throw std::invalid_argument("supermodular requires n >= 2");
  if (n > kExplicitGoodCap) throw std::invalid_argument("supermodular requires n <= 20");
  const std::size_t m = n;
  const Rational L = (Rational(1) - eps) / Rational(static_cast<long>(m) - 1);
  std::vector<Rational> table(std::size_t{1} << m);
  for (GoodMask s = 1; s < table.size(); ++s) {
    const int k = std::popcount(s);
    table[s] = k == 1 ? eps : eps + Rational(k - 1) * L;
  }
  const Valuation v = Valuation::explicit_table(m, std::move(table), false);
  return Instance(std::vector<Valuation>(n, v), m, true);
}

}  // namespace

const std::vector<std::string>& adversarial_families() {
  static const std::vector<std::string> names = {"ef1-unscaled",   "mms-unscaled", "mms-scaled-sqrt",
                                                 "prop1-unscaled", "prop1-scaled", "supermodular"};
  return names;
}

Instance generate_adversarial(const FamilySpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("n must be at least 1");
  const Rational eps = spec.epsilon.value_or(Rational(1, 100));
  if (spec.family == "mms-unscaled" || spec.family == "supermodular") {
    if (!(eps > Rational(0)) || !(eps < Rational(1)))
      throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  if (spec.family == "ef1-unscaled") return ef1_unscaled(spec.n);
  if (spec.family == "mms-unscaled") return mms_unscaled(spec.n, eps);
  if (spec.family == "mms-scaled-sqrt") return mms_scaled_sqrt(spec.n);
  if (spec.family == "prop1-unscaled") return prop1_unscaled(spec.n);
  if (spec.family == "prop1-scaled") return prop1_scaled(spec.n);
  if (spec.family == "supermodular") return supermodular(spec.n, eps);
  throw std::invalid_argument("unknown family: " + spec.family);
}

Distribution parse_distribution(const std::string& name) {
  if (name == "uniform-rational") return Distribution::uniform_rational;
  if (name == "dirichlet-scaled") return Distribution::dirichlet_scaled;
  throw std::invalid_argument("unknown distribution: " + name);
}

std::string distribution_name(Distribution d) {
  return d == Distribution::uniform_rational ? "uniform-rational" : "dirichlet-scaled";
}

Instance generate_random(std::size_t n, std::size_t m, Distribution dist, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("n and m must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<Valuation> vals;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> v(m);
    if (dist == Distribution::uniform_rational) {
      for (auto& x : v) {
        const long q = 1 + static_cast<long>(rng() % 1000);
        const long p = static_cast<long>(rng() % static_cast<std::uint64_t>(q + 1));
        x = Rational(p, q);
      }
    } else {
      // Exponential weights on a 1/1000 grid; the uniform draw is built from
      // the raw 53 high bits so the stream does not depend on the library's
      // distribution implementation.
      std::vector<long> w(m);
      long total = 0;
      for (auto& x : w) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        x = 1 + static_cast<long>(std::floor(-1000.0 * std::log1p(-u)));
        total += x;
      }
      for (std::size_t g = 0; g < m; ++g) v[g] = Rational(w[g], total);
    }
    vals.push_back(Valuation::additive(std::move(v)));
  }
  return Instance(std::move(vals), m, dist == Distribution::dirichlet_scaled);
}

Instance generate_random_subadditive(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("n and m must be at least 1");
  if (m > kExplicitGoodCap) throw std::invalid_argument("explicit instances need m <= 20");
  std::mt19937_64 rng(seed);
  std::vector<Valuation> vals;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<long>> clauses(2, std::vector<long>(m));
    for (auto& c : clauses)
      for (auto& x : c) x = static_cast<long>(rng() % 10);
    std::vector<Rational> table(std::size_t{1} << m);
    for (GoodMask s = 1; s < table.size(); ++s) {
      long best = 0;
      for (const auto& c : clauses) {
        long sum = 0;
        for (GoodMask r = s; r != 0; r &= r - 1) sum += c[std::countr_zero(r)];
        best = std::max(best, sum);
      }
      table[s] = Rational(best);
    }
    vals.push_back(Valuation::explicit_table(m, std::move(table), true));
  }
  return Instance(std::move(vals), m, false);
}

}  // namespace fairdiv
