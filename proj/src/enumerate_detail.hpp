#pragma once

#include <bit>
#include <vector>

#include "fairdiv/oracles.hpp"

namespace fairdiv::detail {

/// Bundle values by bitmask. Additive instances with few goods get a full
/// per-agent table.
class MaskEvaluator {
 public:
  static constexpr std::size_t kTableGoods = 14;

  explicit MaskEvaluator(const Instance& inst);
  [[nodiscard]] Rational value(Agent i, GoodMask mask) const;
  [[nodiscard]] GoodMask full() const { return full_; }

 private:
  const Instance& inst_;
  GoodMask full_ = 0;
  std::vector<std::vector<Rational>> tables_;
};

/// Fairness predicate on a complete allocation given as bitmasks.
class LeafChecker {
 public:
  LeafChecker(const Instance& inst, const MaskEvaluator& eval, const FairnessProperty& property,
              const MmsProfile* profile);
  bool operator()(const std::vector<GoodMask>& masks, const std::vector<Rational>& own) const;

 private:
  const Instance& inst_;
  const MaskEvaluator& eval_;
  FairnessProperty property_;
  std::vector<Rational> thresholds_;
};

}  // namespace fairdiv::detail
