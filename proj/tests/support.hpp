#pragma once

// Independent brute-force oracles and shared fixtures for the test suites.
// Nothing here calls the library's solvers or oracles.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "fairdiv/generators.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/rational.hpp"

namespace fdtest {

using fairdiv::Agent;
using fairdiv::Allocation;
using fairdiv::Bundle;
using fairdiv::Good;
using fairdiv::Instance;
using fairdiv::Rational;
using fairdiv::Valuation;

inline Rational R(long p, long q = 1) { return Rational(p, q); }

inline Instance additive(const std::vector<std::vector<Rational>>& rows, bool scaled = false) {
  std::vector<Valuation> vals;
  for (const auto& r : rows) vals.push_back(Valuation::additive(r));
  return Instance(std::move(vals), rows.empty() ? 0 : rows[0].size(), scaled);
}

/// Calls f(assignment) for every map goods -> agents, last good fastest.
inline void for_each_assignment(std::size_t n, std::size_t m,
                                const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> d(m, 0);
  while (true) {
    f(d);
    std::size_t p = m;
    while (p > 0 && d[p - 1] == n - 1) d[--p] = 0;
    if (p == 0) return;
    ++d[p - 1];
  }
}

inline Allocation to_allocation(std::size_t n, const std::vector<std::size_t>& assign) {
  Allocation a(n);
  for (Good g = 0; g < assign.size(); ++g) a.bundles[assign[g]].push_back(g);
  return a;
}

inline Rational welfare_of(const Instance& inst, const Allocation& a) {
  Rational s;
  for (Agent i = 0; i < inst.n(); ++i) s += inst.valuation(i).value(a.bundles[i]);
  return s;
}

/// max over k-partitions of `goods` of the minimum bundle value, by
/// enumerating every labelled assignment.
inline Rational brute_mms(const Valuation& v, std::size_t k, const Bundle& goods) {
  std::optional<Rational> best;
  std::vector<Bundle> parts(k);
  for_each_assignment(k, goods.size(), [&](const std::vector<std::size_t>& d) {
    for (auto& p : parts) p.clear();
    for (std::size_t x = 0; x < goods.size(); ++x) parts[d[x]].push_back(goods[x]);
    Rational low = v.value(parts[0]);
    for (std::size_t j = 1; j < k; ++j) low = std::min(low, v.value(parts[j]));
    if (!best || low > *best) best = low;
  });
  return *best;
}

inline Bundle all_goods(std::size_t m) {
  Bundle b(m);
  std::iota(b.begin(), b.end(), Good{0});
  return b;
}

/// Literal double loop over pairs and removals.
inline bool brute_ef1(const Instance& inst, const Allocation& a) {
  for (Agent i = 0; i < inst.n(); ++i) {
    const Rational own = inst.valuation(i).value(a.bundles[i]);
    for (Agent j = 0; j < inst.n(); ++j) {
      if (i == j || a.bundles[j].empty()) continue;
      bool ok = false;
      for (Good g : a.bundles[j]) {
        Bundle rest;
        for (Good h : a.bundles[j])
          if (h != g) rest.push_back(h);
        if (own >= inst.valuation(i).value(rest)) ok = true;
      }
      if (!ok) return false;
    }
  }
  return true;
}

inline bool brute_prop1(const Instance& inst, const Allocation& a) {
  for (Agent i = 0; i < inst.n(); ++i) {
    const auto& v = inst.valuation(i);
    const Rational share = v.value(all_goods(inst.m())) / Rational(static_cast<long>(inst.n()));
    if (v.value(a.bundles[i]) >= share) continue;
    bool ok = false;
    for (Good g = 0; g < inst.m() && !ok; ++g) {
      Bundle b = a.bundles[i];
      if (std::find(b.begin(), b.end(), g) == b.end()) b.push_back(g);
      std::sort(b.begin(), b.end());
      ok = v.value(b) >= share;
    }
    if (!ok) return false;
  }
  return true;
}

/// Exhaustive maximum welfare over all n^m allocations.
inline Rational brute_opt(const Instance& inst) {
  Rational best;
  for_each_assignment(inst.n(), inst.m(), [&](const std::vector<std::size_t>& d) {
    best = std::max(best, welfare_of(inst, to_allocation(inst.n(), d)));
  });
  return best;
}

/// v_i([m]) summed over agents.
inline Rational total_values(const Instance& inst) {
  Rational s;
  for (Agent i = 0; i < inst.n(); ++i) s += inst.valuation(i).value(all_goods(inst.m()));
  return s;
}

/// Exact test of x >= y / (c * sqrt(n)) for x, y >= 0: c^2 * n * x^2 >= y^2.
inline bool at_least_over_sqrt(const Rational& x, const Rational& y, long c, std::uint64_t n) {
  const Rational lhs = Rational(c * c) * Rational(static_cast<long>(n)) * x * x;
  return lhs >= y * y;
}

struct CorpusEntry {
  Instance instance;
  std::string label;
};

/// Seeded random additive instances with n in [1, 6], m in [1, 10], mixing
/// both random distributions.
inline std::vector<CorpusEntry> additive_corpus(std::size_t count, std::uint64_t base_seed) {
  std::vector<CorpusEntry> out;
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t seed = base_seed + k;
    const std::size_t n = 1 + seed % 6;
    const std::size_t m = 1 + (seed / 6) % 10;
    const auto dist = k % 2 == 0 ? fairdiv::Distribution::uniform_rational
                                 : fairdiv::Distribution::dirichlet_scaled;
    out.push_back({fairdiv::generate_random(n, m, dist, seed),
                   fairdiv::distribution_name(dist) + " seed " + std::to_string(seed)});
  }
  return out;
}

/// Seeded explicit subadditive instances with n in [1, 3], m in [1, 6].
inline std::vector<CorpusEntry> subadditive_corpus(std::size_t count, std::uint64_t base_seed) {
  std::vector<CorpusEntry> out;
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t seed = base_seed + k;
    const std::size_t n = 1 + seed % 3;
    const std::size_t m = 1 + (seed / 3) % 6;
    out.push_back({fairdiv::generate_random_subadditive(n, m, seed),
                   "subadditive seed " + std::to_string(seed)});
  }
  return out;
}

}  // namespace fdtest
