// Parallel exhaustive search over complete allocations.
//
// Goods are assigned in index order, agents tried in ascending order, so the
// depth-first visit order is lexicographic in the good-to-agent assignment.
// The top of the tree is cut into n^d prefix tasks scheduled dynamically
// across OpenMP threads; each task keeps its own incumbent and prunes on a
// welfare upper bound. Tasks also read a shared incumbent, but only prune
// strictly below it, so the lexicographically first optimum survives and the
// final in-order reduction is deterministic.

#include <mutex>

#include <omp.h>

#include "fairdiv/oracles.hpp"
#include "enumerate_detail.hpp"

namespace fairdiv {

namespace detail {

MaskEvaluator::MaskEvaluator(const Instance& inst) : inst_(inst) {
  const std::size_t m = inst.m();
  if (m > 64) throw OracleInfeasible("allocation enumeration supports at most 64 goods");
  full_ = m == 64 ? ~GoodMask{0} : (GoodMask{1} << m) - 1;
  if (inst.additive() && m <= kTableGoods) {
    tables_.resize(inst.n());
    for (Agent i = 0; i < inst.n(); ++i) {
      auto& t = tables_[i];
      t.resize(std::size_t{1} << m);
      for (GoodMask s = 1; s < t.size(); ++s) {
        const GoodMask low = s & (0 - s);
        t[s] = t[s ^ low] + inst.valuation(i).good_value(std::countr_zero(low));
      }
    }
  }
}

Rational MaskEvaluator::value(Agent i, GoodMask mask) const {
  if (!tables_.empty()) return tables_[i][mask];
  return inst_.valuation(i).value(mask);
}

LeafChecker::LeafChecker(const Instance& inst, const MaskEvaluator& eval,
                         const FairnessProperty& property, const MmsProfile* profile)
    : inst_(inst), eval_(eval), property_(property) {
  const std::size_t n = inst.n();
  if (property.kind == FairnessProperty::Kind::prop1) {
    for (Agent i = 0; i < n; ++i)
      thresholds_.push_back(inst.valuation(i).total() / Rational(static_cast<unsigned long>(n)));
  } else if (property.kind == FairnessProperty::Kind::alpha_mms) {
    for (Agent i = 0; i < n; ++i) thresholds_.push_back(property.alpha * profile->mms[i]);
  }
}

bool LeafChecker::operator()(const std::vector<GoodMask>& masks,
                             const std::vector<Rational>& own) const {
  const std::size_t n = inst_.n();
  switch (property_.kind) {
    case FairnessProperty::Kind::none:
      return true;
    case FairnessProperty::Kind::alpha_mms:
      for (Agent i = 0; i < n; ++i)
        if (own[i] < thresholds_[i]) return false;
      return true;
    case FairnessProperty::Kind::prop1:
      for (Agent i = 0; i < n; ++i) {
        if (own[i] >= thresholds_[i]) continue;
        bool ok = false;
        const GoodMask outside = eval_.full() & ~masks[i];
        for (GoodMask r = outside; r != 0 && !ok; r &= r - 1) {
          const GoodMask bit = r & (0 - r);
          ok = eval_.value(i, masks[i] | bit) >= thresholds_[i];
        }
        if (!ok) return false;
      }
      return true;
    case FairnessProperty::Kind::ef1:
      for (Agent i = 0; i < n; ++i) {
        const auto& v = inst_.valuation(i);
        for (Agent j = 0; j < n; ++j) {
          if (i == j || masks[j] == 0) continue;
          if (v.is_additive()) {
            const Rational whole = eval_.value(i, masks[j]);
            if (whole <= own[i]) continue;
            Rational top;
            for (GoodMask r = masks[j]; r != 0; r &= r - 1) {
              const auto& x = v.good_value(std::countr_zero(r));
              if (x > top) top = x;
            }
            if (whole - top > own[i]) return false;
          } else {
            bool ok = false;
            for (GoodMask r = masks[j]; r != 0 && !ok; r &= r - 1) {
              const GoodMask bit = r & (0 - r);
              ok = eval_.value(i, masks[j] ^ bit) <= own[i];
            }
            if (!ok) return false;
          }
        }
      }
      return true;
  }
  return false;
}

}  // namespace detail

namespace {

using detail::LeafChecker;
using detail::MaskEvaluator;

class SharedIncumbent {
 public:
  void offer(const Rational& w) {
    std::lock_guard lock(mu_);
    if (!set_ || w > value_) {
      value_ = w;
      set_ = true;
    }
  }
  bool read(Rational& out) const {
    std::lock_guard lock(mu_);
    if (set_) out = value_;
    return set_;
  }

 private:
  mutable std::mutex mu_;
  Rational value_;
  bool set_ = false;
};

struct TaskResult {
  bool found = false;
  Rational welfare;
  std::vector<std::size_t> assignment;
  std::uint64_t leaves = 0;
};

class Searcher {
 public:
  Searcher(const Instance& inst, const MaskEvaluator& eval, const LeafChecker& check,
           const std::vector<Rational>& suffix_best, SharedIncumbent& shared)
      : inst_(inst), eval_(eval), check_(check), suffix_best_(suffix_best), shared_(shared),
        masks_(inst.n(), 0), own_(inst.n()), assign_(inst.m(), 0) {}

  TaskResult run(const std::vector<std::size_t>& prefix) {
    for (std::size_t g = 0; g < prefix.size(); ++g) place(g, prefix[g]);
    refresh_shared();
    dfs(prefix.size());
    return std::move(result_);
  }

 private:
  void place(std::size_t g, std::size_t a) {
    assign_[g] = a;
    masks_[a] |= GoodMask{1} << g;
    own_[a] = eval_.value(a, masks_[a]);
  }
  void unplace(std::size_t g, std::size_t a) {
    masks_[a] &= ~(GoodMask{1} << g);
    own_[a] = eval_.value(a, masks_[a]);
  }

  void refresh_shared() { have_shared_ = shared_.read(shared_best_); }

  Rational upper_bound(std::size_t g) const {
    Rational ub;
    if (inst_.additive()) {
      for (const auto& x : own_) ub += x;
      ub += suffix_best_[g];
    } else {
      const GoodMask rest = eval_.full() & ~((g >= 64 ? ~GoodMask{0} : (GoodMask{1} << g)) - 1);
      for (Agent i = 0; i < inst_.n(); ++i) ub += eval_.value(i, masks_[i] | rest);
    }
    return ub;
  }

  bool pruned(std::size_t g) {
    if (!result_.found && !have_shared_) return false;
    const Rational ub = upper_bound(g);
    if (result_.found && ub <= result_.welfare) return true;
    return have_shared_ && ub < shared_best_;
  }

  void dfs(std::size_t g) {
    if ((++nodes_ & 0x3FF) == 0) refresh_shared();
    const std::size_t m = inst_.m();
    if (g == m) {
      ++result_.leaves;
      Rational welfare;
      for (const auto& x : own_) welfare += x;
      if (result_.found && welfare <= result_.welfare) return;
      if (!check_(masks_, own_)) return;
      result_.found = true;
      result_.welfare = welfare;
      result_.assignment = assign_;
      shared_.offer(welfare);
      return;
    }
    if (pruned(g)) return;
    for (std::size_t a = 0; a < inst_.n(); ++a) {
      place(g, a);
      dfs(g + 1);
      unplace(g, a);
    }
  }

  const Instance& inst_;
  const MaskEvaluator& eval_;
  const LeafChecker& check_;
  const std::vector<Rational>& suffix_best_;
  SharedIncumbent& shared_;
  std::vector<GoodMask> masks_;
  std::vector<Rational> own_;
  std::vector<std::size_t> assign_;
  Rational shared_best_;
  bool have_shared_ = false;
  std::uint64_t nodes_ = 0;
  TaskResult result_;
};

}  // namespace

ConstrainedOptimum constrained_opt(const Instance& inst, const FairnessProperty& property,
                                   const OracleLimits& limits, const MmsProfile* profile) {
  const std::size_t n = inst.n(), m = inst.m();
  if (allocation_count(n, m) > limits.enumeration_cap)
    throw OracleInfeasible("n^m = " + std::to_string(n) + "^" + std::to_string(m) +
                           " exceeds the enumeration cap");
  MmsProfile own_profile;
  if (property.kind == FairnessProperty::Kind::alpha_mms && profile == nullptr) {
    own_profile = mms_profile(inst, Rational(0), false, limits);
    profile = &own_profile;
  }
  const MaskEvaluator eval(inst);
  const LeafChecker check(inst, eval, property, profile);

  std::vector<Rational> suffix_best(m + 1);
  if (inst.additive()) {
    for (std::size_t g = m; g-- > 0;) {
      Rational top;
      for (Agent i = 0; i < n; ++i)
        if (inst.valuation(i).good_value(g) > top) top = inst.valuation(i).good_value(g);
      suffix_best[g] = suffix_best[g + 1] + top;
    }
  }

  // Prefix depth: enough tasks to keep every thread busy.
  const std::size_t want = 8 * static_cast<std::size_t>(omp_get_max_threads());
  std::size_t depth = 0, tasks = 1;
  while (depth < m && tasks < want) {
    ++depth;
    tasks *= n;
  }
  std::vector<TaskResult> results(tasks);
  SharedIncumbent shared;

  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t t = 0; t < tasks; ++t) {
    try {
      std::vector<std::size_t> prefix(depth);
      std::size_t code = t;
      for (std::size_t d = depth; d-- > 0;) {
        prefix[d] = code % n;
        code /= n;
      }
      Searcher searcher(inst, eval, check, suffix_best, shared);
      results[t] = searcher.run(prefix);
    } catch (...) {
#pragma omp critical(fairdiv_enum_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  ConstrainedOptimum out;
  const TaskResult* best = nullptr;
  for (const auto& r : results) {
    out.leaves_checked += r.leaves;
    if (r.found && (best == nullptr || r.welfare > best->welfare)) best = &r;
  }
  if (best != nullptr) {
    Allocation alloc(n);
    for (Good g = 0; g < m; ++g) alloc.bundles[best->assignment[g]].push_back(g);
    out.allocation = std::move(alloc);
    out.welfare = best->welfare;
  }
  return out;
}

}  // namespace fairdiv
