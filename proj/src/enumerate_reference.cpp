// Serial odometer over every allocation, checked with the public predicates.

#include "fairdiv/metrics.hpp"
#include "fairdiv/oracles.hpp"

namespace fairdiv {

ConstrainedOptimum constrained_opt_reference(const Instance& inst,
                                             const FairnessProperty& property,
                                             const OracleLimits& limits,
                                             const MmsProfile* profile) {
  const std::size_t n = inst.n(), m = inst.m();
  if (allocation_count(n, m) > limits.enumeration_cap)
    throw OracleInfeasible("n^m exceeds the enumeration cap");
  MmsProfile own_profile;
  if (property.kind == FairnessProperty::Kind::alpha_mms && profile == nullptr) {
    own_profile = mms_profile(inst, Rational(0), false, limits);
    profile = &own_profile;
  }

  ConstrainedOptimum out;
  std::vector<std::size_t> digits(m, 0);
  while (true) {
    Allocation alloc(n);
    for (Good g = 0; g < m; ++g) alloc.bundles[digits[g]].push_back(g);
    ++out.leaves_checked;
    const Rational welfare = social_welfare(inst, alloc);
    if (!out.allocation || welfare > out.welfare) {
      bool fair = true;
      switch (property.kind) {
        case FairnessProperty::Kind::none: break;
        case FairnessProperty::Kind::ef1: fair = is_ef1(inst, alloc).holds; break;
        case FairnessProperty::Kind::prop1: fair = is_prop1(inst, alloc).holds; break;
        case FairnessProperty::Kind::alpha_mms:
          fair = is_alpha_mms(inst, alloc, property.alpha, *profile).holds;
          break;
      }
      if (fair) {
        out.allocation = std::move(alloc);
        out.welfare = welfare;
      }
    }
    // Last good is the fastest-moving digit.
    std::size_t pos = m;
    while (pos > 0 && digits[pos - 1] == n - 1) digits[--pos] = 0;
    if (pos == 0) break;
    ++digits[pos - 1];
  }
  return out;
}

}  // namespace fairdiv
