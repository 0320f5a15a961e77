#include "fairdiv/ef1.hpp"

#include <algorithm>
#include <stdexcept>

#include "fairdiv/matching.hpp"

namespace fairdiv {

Ef1AbsResult alg_ef1_abs(const Instance& inst, const EnvyCycleOptions& options) {
  const Matching match = max_weight_left_perfect_matching(singleton_weights(inst));
  Ef1AbsResult out;
  out.matched = Allocation(inst.n());
  for (Agent i = 0; i < inst.n(); ++i)
    if (match.assignment[i]) out.matched.bundles[i].push_back(*match.assignment[i]);
  out.allocation = extend_ef1(inst, out.matched, options, &out.envy);
  return out;
}

Allocation reference_allocation(const Instance& inst, const std::optional<Allocation>& supplied,
                                const OracleLimits& limits) {
  if (supplied) {
    validate_allocation(*supplied, inst.n(), inst.m());
    if (!supplied->complete(inst.m()))
      throw std::invalid_argument("reference allocation must be complete");
    return *supplied;
  }
  if (inst.additive()) return max_welfare(inst, limits).allocation;
  if (allocation_count(inst.n(), inst.m()) > limits.enumeration_cap)
    throw OracleInfeasible("explicit instance beyond the enumeration cap needs a supplied reference allocation");
  return max_welfare(inst, limits).allocation;
}

std::vector<std::pair<std::size_t, std::size_t>> unassigned_components(
    const std::vector<Good>& line, const Allocation& partial) {
  std::vector<bool> taken(line.size(), false);
  for (const auto& b : partial.bundles)
    for (Good g : b) taken[g] = true;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 0; p < line.size();) {
    if (taken[line[p]]) {
      ++p;
      continue;
    }
    std::size_t q = p;
    while (q + 1 < line.size() && !taken[line[q + 1]]) ++q;
    out.emplace_back(p, q);
    p = q + 1;
  }
  return out;
}

namespace {

// Bundle of the goods at line positions a..c.
Bundle segment(const std::vector<Good>& line, std::size_t a, std::size_t c) {
  Bundle b(line.begin() + static_cast<long>(a), line.begin() + static_cast<long>(c) + 1);
  std::sort(b.begin(), b.end());
  return b;
}

class Ef1High {
 public:
  Ef1High(const Instance& inst, const Allocation& reference, bool check)
      : inst_(inst), check_(check) {
    validate_allocation(reference, inst.n(), inst.m());
    if (!reference.complete(inst.m()))
      throw std::invalid_argument("reference allocation must be complete");
    pos_.assign(inst.m(), 0);
    for (Agent i = 0; i < inst.n(); ++i)
      for (Good g : reference.bundles[i]) {
        pos_[g] = line_.size();
        line_.push_back(g);
      }
    partial_ = Allocation(inst.n());
    own_.assign(inst.n(), Rational(0));
    for (Agent i = 0; i < inst.n(); ++i) {
      const Bundle& w = reference.bundles[i];
      if (w.empty()) continue;
      Good best = w.front();
      Rational best_val = inst.valuation(i).value(Bundle{best});
      for (Good g : w) {
        Rational x = inst.valuation(i).value(Bundle{g});
        if (x > best_val) {
          best = g;
          best_val = std::move(x);
        }
      }
      partial_.bundles[i] = {best};
      own_[i] = best_val;
    }
  }

  Ef1HighResult run() {
    if (check_) verify(std::vector<Rational>(inst_.n()), std::vector<Bundle>(inst_.n()));
    while (step()) {
    }
    Ef1HighResult out;
    out.partial = partial_;
    out.line = line_;
    out.trace = std::move(trace_);
    out.iterations = out.trace.size();
    out.allocation = extend_ef1(inst_, partial_, {check_}, &out.envy);
    return out;
  }

 private:
  // Values v_i(g_a..g_p) for p = a..b, computed incrementally.
  std::vector<Rational> prefix_values(Agent i, std::size_t a, std::size_t b) const {
    const auto& v = inst_.valuation(i);
    std::vector<Rational> out;
    out.reserve(b - a + 1);
    if (v.is_additive()) {
      Rational run;
      for (std::size_t p = a; p <= b; ++p) {
        run += v.good_value(line_[p]);
        out.push_back(run);
      }
    } else {
      GoodMask mask = 0;
      for (std::size_t p = a; p <= b; ++p) {
        mask |= GoodMask{1} << line_[p];
        out.push_back(v.value(mask));
      }
    }
    return out;
  }

  bool step() {
    const auto comps = unassigned_components(line_, partial_);
    for (const auto& [a, b] : comps) {
      std::vector<std::vector<Rational>> prefix(inst_.n());
      bool envied = false;
      for (Agent i = 0; i < inst_.n(); ++i) {
        prefix[i] = prefix_values(i, a, b);
        envied = envied || own_[i] < prefix[i].back();
      }
      if (!envied) continue;
      for (std::size_t c = a; c <= b; ++c) {
        for (Agent k = 0; k < inst_.n(); ++k) {
          if (!(own_[k] < prefix[k][c - a])) continue;
          const std::vector<Rational> before = own_;
          const std::vector<Bundle> old = partial_.bundles;
          partial_.bundles[k] = segment(line_, a, c);
          own_[k] = prefix[k][c - a];
          trace_.push_back({trace_.size() + 1, k, a, c});
          if (check_) verify(before, old);
          return true;
        }
      }
      throw std::logic_error("envied component without a violating prefix");
    }
    return false;
  }

  void verify(const std::vector<Rational>& before, const std::vector<Bundle>& old) const {
    if (!is_ef1(inst_, partial_).holds)
      throw std::logic_error("connected-bundle iteration broke EF1");
    for (Agent i = 0; i < inst_.n(); ++i) {
      const Bundle& b = partial_.bundles[i];
      if (!b.empty()) {
        std::size_t lo = line_.size(), hi = 0;
        for (Good g : b) {
          lo = std::min(lo, pos_[g]);
          hi = std::max(hi, pos_[g]);
        }
        if (hi - lo + 1 != b.size()) throw std::logic_error("assigned bundle is not connected");
      }
      if (b != old[i] && !(own_[i] > before[i]))
        throw std::logic_error("reassigned agent did not strictly improve");
    }
    if (unassigned_components(line_, partial_).size() > inst_.n() + 1)
      throw std::logic_error("more than n+1 unassigned components");
  }

  const Instance& inst_;
  bool check_;
  std::vector<Good> line_;
  std::vector<std::size_t> pos_;
  Allocation partial_;
  std::vector<Rational> own_;
  std::vector<Ef1HighStep> trace_;
};

}  // namespace

Ef1HighResult alg_ef1_high(const Instance& inst, const Allocation& reference,
                           bool check_invariants) {
  return Ef1High(inst, reference, check_invariants).run();
}

Ef1Solution solve_ef1(const Instance& inst, const std::optional<Allocation>& reference,
                      const OracleLimits& limits, bool check_invariants) {
  Ef1Solution out;
  out.abs = alg_ef1_abs(inst, {check_invariants});
  out.allocation = out.abs.allocation;
  out.welfare = social_welfare(inst, out.allocation);
  out.branch = "abs";
  if (!inst.scaled()) return out;
  out.high = alg_ef1_high(inst, reference_allocation(inst, reference, limits), check_invariants);
  const Rational high_welfare = social_welfare(inst, out.high->allocation);
  if (high_welfare > out.welfare) {
    out.allocation = out.high->allocation;
    out.welfare = high_welfare;
    out.branch = "high";
  }
  return out;
}

}  // namespace fairdiv
