// Acceptance run: one PASS/FAIL line per criterion, exit code 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "fairdiv/ef1.hpp"
#include "fairdiv/metrics.hpp"
#include "fairdiv/mms.hpp"
#include "support.hpp"

using namespace fairdiv;
using fdtest::R;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream notes;
  int failures = 0;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (++failures <= 5) notes << "\n    - " << what;
  }
};

// Sum over goods of the best agent's value: the additive welfare optimum,
// computed without the library.
Rational additive_opt(const Instance& inst) {
  Rational s;
  for (Good g = 0; g < inst.m(); ++g) {
    Rational best;
    for (Agent i = 0; i < inst.n(); ++i) best = std::max(best, inst.valuation(i).good_value(g));
    s += best;
  }
  return s;
}

// Exact MMS profile from partition enumeration.
std::vector<Rational> brute_profile(const Instance& inst) {
  std::vector<Rational> out;
  for (Agent i = 0; i < inst.n(); ++i)
    out.push_back(fdtest::brute_mms(inst.valuation(i), inst.n(), fdtest::all_goods(inst.m())));
  return out;
}

bool half_mms_brute(const Instance& inst, const Allocation& a, const std::vector<Rational>& mms) {
  for (Agent i = 0; i < inst.n(); ++i)
    if (R(2) * inst.valuation(i).value(a.bundles[i]) < mms[i]) return false;
  return true;
}

MmsProfile as_profile(const std::vector<Rational>& mms) {
  MmsProfile p;
  p.mms = mms;
  p.estimates = mms;
  return p;
}

std::vector<fdtest::CorpusEntry> random_corpus() {
  auto out = fdtest::additive_corpus(1000, 1);
  for (auto& e : fdtest::subadditive_corpus(200, 1)) out.push_back(std::move(e));
  return out;
}

// Small additive corpus with n <= 4, m <= 8.
std::vector<fdtest::CorpusEntry> mms_corpus(std::size_t count, std::uint64_t base) {
  std::vector<fdtest::CorpusEntry> out;
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t seed = base + k;
    const std::size_t n = 1 + seed % 4, m = 1 + (seed / 4) % 8;
    const auto d = k % 2 ? Distribution::dirichlet_scaled : Distribution::uniform_rational;
    out.push_back({generate_random(n, m, d, seed), distribution_name(d) + " seed " + std::to_string(seed)});
  }
  return out;
}

std::vector<std::pair<std::size_t, Instance>> scaled_grid() {
  std::vector<std::pair<std::size_t, Instance>> out;
  for (std::size_t n : {4u, 9u, 16u})
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
      out.emplace_back(n, generate_random(n, 2 * n, Distribution::dirichlet_scaled, 1000 * n + seed));
  return out;
}

void criterion1(Outcome& o) {
  for (const auto& e : random_corpus()) {
    const auto& inst = e.instance;
    const auto abs = alg_ef1_abs(inst);
    const auto high = alg_ef1_high(inst, reference_allocation(inst));
    const auto sol = solve_ef1(inst);
    for (const auto* a : {&abs.allocation, &high.allocation, &sol.allocation}) {
      o.expect(a->complete(inst.m()), e.label + ": incomplete output");
      o.expect(is_ef1(inst, *a).holds, e.label + ": is_ef1 rejects output");
      o.expect(fdtest::brute_ef1(inst, *a), e.label + ": brute-force EF1 rejects output");
    }
  }
}

void criterion2(Outcome& o) {
  for (const auto& e : random_corpus()) {
    const auto& inst = e.instance;
    const Rational total = fdtest::total_values(inst);
    const long n = static_cast<long>(inst.n());
    const Rational ef1 = fdtest::welfare_of(inst, alg_ef1_abs(inst).allocation);
    o.expect(ef1 * R(2 * n) >= total, e.label + ": EF1 abs welfare " + ef1.str() + " < total/(2n)");
    if (!inst.additive()) continue;
    const Rational mms = fdtest::welfare_of(inst, alg_mms_abs(inst).allocation);
    o.expect(mms * R(3 * n) >= total, e.label + ": MMS abs welfare " + mms.str() + " < total/(3n)");
  }
}

void criterion3(Outcome& o) {
  for (const auto& e : mms_corpus(500, 1)) {
    const auto& inst = e.instance;
    const auto mms = brute_profile(inst);
    o.expect(mms_profile(inst).mms == mms, e.label + ": oracle profile disagrees with enumeration");
    const auto profile = as_profile(mms);
    const auto abs = alg_mms_abs(inst);
    const auto sol = solve_half_mms(inst, R(0));
    for (const auto* a : {&abs.allocation, &sol.allocation}) {
      o.expect(a->complete(inst.m()), e.label + ": incomplete output");
      o.expect(is_alpha_mms(inst, *a, R(1, 2), profile).holds, e.label + ": is_alpha_mms(1/2) rejects output");
      o.expect(half_mms_brute(inst, *a, mms), e.label + ": some agent below half her MMS");
    }
  }
}

void criterion4(Outcome& o) {
  for (const auto& [n, inst] : scaled_grid()) {
    const Rational opt = additive_opt(inst);
    const auto s = solve_ef1(inst);
    o.expect(fdtest::brute_ef1(inst, s.allocation), "n=" + std::to_string(n) + ": output not EF1");
    o.expect(fdtest::at_least_over_sqrt(fdtest::welfare_of(inst, s.allocation), opt, 16, n),
             "n=" + std::to_string(n) + ": welfare " + s.welfare.str() + " below OPT/(16 sqrt n)");
  }
}

void criterion5(Outcome& o) {
  for (const auto& [n, inst] : scaled_grid()) {
    const Rational opt = additive_opt(inst);
    const auto s = solve_half_mms(inst, R(0));
    const std::string tag = "n=" + std::to_string(n);
    o.expect(fdtest::at_least_over_sqrt(fdtest::welfare_of(inst, s.allocation), opt, 15, n),
             tag + ": welfare " + s.welfare.str() + " below OPT/(15 sqrt n)");
    o.expect(s.high.has_value(), tag + ": high-welfare branch did not run");
    if (!s.high) continue;
    const std::size_t t = s.high->t_size();
    o.expect(t * t <= 16 * n, tag + ": |T| = " + std::to_string(t) + " exceeds 4 sqrt n");
    o.expect(s.high->covers_all_agents(), tag + ": P and T do not cover every agent");
  }
}

void criterion6(Outcome& o) {
  const auto inst = generate_adversarial({"ef1-unscaled", 4, {}});
  const Rational opt = fdtest::brute_opt(inst);
  std::optional<Rational> fair;
  std::size_t count = 0;
  fdtest::for_each_assignment(4, 4, [&](const std::vector<std::size_t>& d) {
    ++count;
    const auto a = fdtest::to_allocation(4, d);
    if (!fdtest::brute_ef1(inst, a)) return;
    const Rational w = fdtest::welfare_of(inst, a);
    if (!fair || w > *fair) fair = w;
  });
  o.expect(count == 256, "expected 256 allocations");
  o.expect(opt == R(16), "OPT = " + opt.str());
  o.expect(fair && *fair == R(19, 4), "EF1 optimum = " + (fair ? fair->str() : "none"));
  o.expect(constrained_opt(inst, FairnessProperty::ef1()).welfare == R(19, 4), "library EF1 optimum differs");
  if (fair) {
    const Rational price = opt / *fair;
    o.expect(price == R(64, 19), "price = " + price.str());
    o.expect(price >= R(16, 5), "price below n^2/(n+1)");
    o.notes << " price " << price.str() << " (" << price.decimal(6) << ")";
  }
}

void criterion7(Outcome& o) {
  const auto inst = generate_adversarial({"mms-scaled-sqrt", 4, {}});
  const auto mms = brute_profile(inst);
  o.expect(mms_profile(inst).mms == mms, "oracle profile disagrees with enumeration");
  std::optional<Rational> best;
  std::size_t count = 0, fair_count = 0;
  fdtest::for_each_assignment(4, 4, [&](const std::vector<std::size_t>& d) {
    ++count;
    const auto a = fdtest::to_allocation(4, d);
    if (!half_mms_brute(inst, a, mms)) return;
    ++fair_count;
    for (Agent i = 2; i < 4; ++i) o.expect(!a.bundles[i].empty(), "a low agent got nothing");
    const Rational w = fdtest::welfare_of(inst, a);
    if (!best || w > *best) best = w;
  });
  o.expect(count == 256, "expected 256 allocations");
  o.expect(best && *best <= R(2), "half-MMS welfare exceeds 2");
  o.notes << " profile [";
  for (std::size_t i = 0; i < mms.size(); ++i) o.notes << (i ? "," : "") << mms[i].str();
  o.notes << "], " << fair_count << " half-MMS allocations, max welfare " << (best ? best->str() : "none");

  // Ratio growth: exact fair optimum at n = 4, solver welfare beyond.
  std::vector<Rational> ratios;
  for (std::size_t n : {4u, 9u, 16u}) {
    const auto sq = generate_adversarial({"mms-scaled-sqrt", n, {}});
    const Rational opt = additive_opt(sq);
    const Rational denom = n == 4 ? *best : solve_half_mms(sq, R(0)).welfare;
    ratios.push_back(opt / denom);
  }
  o.notes << "; ratios";
  for (const auto& r : ratios) o.notes << ' ' << r.str();
  for (std::size_t k = 1; k < ratios.size(); ++k) o.expect(ratios[k] > ratios[k - 1], "ratio did not grow");
}

void criterion8(Outcome& o) {
  const Rational eps(1, 100);
  const auto inst = generate_adversarial({"supermodular", 3, eps});
  const Rational opt = fdtest::brute_opt(inst);
  std::optional<Rational> fair;
  fdtest::for_each_assignment(3, 3, [&](const std::vector<std::size_t>& d) {
    const auto a = fdtest::to_allocation(3, d);
    if (!fdtest::brute_ef1(inst, a)) return;
    const Rational w = fdtest::welfare_of(inst, a);
    if (!fair || w > *fair) fair = w;
  });
  o.expect(opt == R(1), "OPT = " + opt.str());
  o.expect(fair && *fair == R(3) * eps, "EF1 optimum = " + (fair ? fair->str() : "none"));
  o.expect(constrained_opt(inst, FairnessProperty::ef1()).welfare == R(3, 100), "library EF1 optimum differs");
  if (fair) {
    const Rational price = opt / *fair;
    o.expect(price == R(100, 3), "price = " + price.str());
    o.expect(price >= R(1) / (R(3) * eps), "price below 1/(n eps)");
  }
}

Rational brute_prop1_opt(const Instance& inst) {
  std::optional<Rational> best;
  fdtest::for_each_assignment(inst.n(), inst.m(), [&](const std::vector<std::size_t>& d) {
    const auto a = fdtest::to_allocation(inst.n(), d);
    if (!fdtest::brute_prop1(inst, a)) return;
    const Rational w = fdtest::welfare_of(inst, a);
    if (!best || w > *best) best = w;
  });
  return *best;
}

void criterion9(Outcome& o) {
  const auto u = generate_adversarial({"prop1-unscaled", 3, {}});
  const Rational fu = brute_prop1_opt(u);
  o.expect(fu < R(2 * 3 + 3), "prop1-unscaled(3) optimum " + fu.str() + " not below 2n+3");
  o.expect(constrained_opt(u, FairnessProperty::prop1()).welfare == fu, "library Prop1 optimum differs (unscaled)");

  const auto s = generate_adversarial({"prop1-scaled", 4, {}});
  const Rational fs = brute_prop1_opt(s);
  // (sqrt(n) + 1) / sqrt(n) + (n - sqrt(n)) / (n + 1) at n = 4.
  const Rational cap = R(3, 2) + R(2, 5);
  o.expect(fs <= cap, "prop1-scaled(4) optimum " + fs.str() + " above " + cap.str());
  o.expect(constrained_opt(s, FairnessProperty::prop1()).welfare == fs, "library Prop1 optimum differs (scaled)");
  o.notes << " unscaled " << fu.str() << " < 9, scaled " << fs.str() << " <= " << cap.str();
}

void criterion10(Outcome& o) {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 3, m = 1 + rng() % 7;
    const auto inst = generate_random(n, m, trial % 2 ? Distribution::dirichlet_scaled
                                                      : Distribution::uniform_rational, rng());
    const Agent l = rng() % n;
    const auto& v = inst.valuation(l);
    const Bundle all = fdtest::all_goods(m);
    const std::string tag = "trial " + std::to_string(trial);

    // Shift inequality for every k in [2, n] and every removed good.
    for (std::size_t k = 2; k <= n; ++k) {
      const Rational base = fdtest::brute_mms(v, k, all);
      o.expect(mms_k(v, k, all) == base, tag + ": oracle MMS disagrees with enumeration");
      for (Good g = 0; g < m; ++g) {
        Bundle rest;
        for (Good h : all)
          if (h != g) rest.push_back(h);
        o.expect(base <= fdtest::brute_mms(v, k - 1, rest), tag + ": shift inequality fails");
      }
    }

    // Flow inequality on random bundle collections meeting the hypothesis.
    const Rational share = fdtest::brute_mms(v, n, all);
    for (int draw = 0; draw < 20; ++draw) {
      std::vector<bool> used(m, false);
      const std::size_t s = rng() % (n + 1);
      std::size_t placed = 0;
      for (std::size_t a = 0; a < s; ++a) {
        Bundle b;
        for (Good g = 0; g < m; ++g)
          if (!used[g] && rng() % 3 == 0) b.push_back(g);
        while (b.size() > 1 && v.value(b) > share) b.erase(b.begin() + static_cast<long>(rng() % b.size()));
        for (Good g : b) used[g] = true;
        ++placed;
      }
      Bundle rest;
      for (Good g = 0; g < m; ++g)
        if (!used[g]) rest.push_back(g);
      o.expect(v.value(rest) >= R(static_cast<long>(n - placed)) * share, tag + ": flow inequality fails");
    }
  }
}

void criterion11(Outcome& o) {
  std::size_t worst_iter = 0, worst_steps = 0;
  for (const auto& e : random_corpus()) {
    const auto& inst = e.instance;
    const std::size_t n = inst.n(), m = inst.m();
    const auto abs = alg_ef1_abs(inst);
    const auto high = alg_ef1_high(inst, reference_allocation(inst));
    o.expect(high.iterations <= n * m * m, e.label + ": iterations " + std::to_string(high.iterations));
    o.expect(abs.envy.steps() <= m * n * n, e.label + ": envy-cycle steps (abs)");
    o.expect(high.envy.steps() <= m * n * n, e.label + ": envy-cycle steps (high)");
    worst_iter = std::max(worst_iter, high.iterations);
    worst_steps = std::max({worst_steps, abs.envy.steps(), high.envy.steps()});
  }
  o.notes << " max iterations " << worst_iter << ", max envy-cycle steps " << worst_steps;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"EF1 soundness on the random corpus", criterion1},
      {"absolute welfare bounds 1/(2n) and 1/(3n)", criterion2},
      {"half-MMS soundness against enumerated MMS", criterion3},
      {"EF1 welfare >= OPT/(16 sqrt n) on scaled instances", criterion4},
      {"half-MMS welfare >= OPT/(15 sqrt n), |T| <= 4 sqrt n, P u T = [n]", criterion5},
      {"ef1-unscaled(4): OPT 16, EF1 optimum 19/4, price 64/19", criterion6},
      {"mms-scaled-sqrt: low agents served, welfare <= 2, ratio growth", criterion7},
      {"supermodular(3, 1/100): EF1 optimum 3/100, price 100/3", criterion8},
      {"Prop1 optimum caps on prop1-unscaled(3) and prop1-scaled(4)", criterion9},
      {"shift and flow inequalities for maximin shares", criterion10},
      {"termination envelopes n m^2 and m n^2", criterion11},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.notes << "\n    - exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.ok) ++failed;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << (k + 1) << ": " << criteria[k].first << " ["
              << timing << "]" << o.notes.str();
    if (o.failures > 5) std::cout << "\n    ... " << o.failures << " failures in total";
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
