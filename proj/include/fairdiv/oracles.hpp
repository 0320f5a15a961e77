#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fairdiv/instance.hpp"

namespace fairdiv {

/// Raised when an exact oracle would exceed its configured work cap.
class OracleInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  /// Upper bound on n^m for exhaustive allocation scans.
  std::uint64_t enumeration_cap = 20'000'000;
  /// Search-node budget for the additive maximin-share branch and bound.
  std::uint64_t mms_node_budget = 200'000'000;
  /// Upper bound on 3^|G| for the explicit-valuation subset recursion.
  std::uint64_t explicit_mms_cap = 20'000'000;
};

/// Exact maximin shares plus the estimates Z_i handed to the high-welfare
/// MMS solver. Invariant: (1 - epsilon) * mms[i] <= estimates[i] <= mms[i].
struct MmsProfile {
  std::vector<Rational> mms;
  std::vector<Rational> estimates;
  Rational epsilon;

  [[nodiscard]] const Rational& estimate(Agent i) const { return estimates[i]; }
  /// Throws std::invalid_argument if an estimate falls outside its bracket
  /// or epsilon is outside [0, 1).
  void validate() const;
};

/// max over k-partitions of `goods` of the minimum bundle value.
Rational mms_k(const Valuation& v, std::size_t k, const Bundle& goods,
               const OracleLimits& limits = {});

/// mms[i] = MMS_i. Estimates equal the exact values unless `degrade` is set,
/// in which case Z_i = (1 - epsilon) * MMS_i. Agents are solved in parallel.
MmsProfile mms_profile(const Instance& inst, const Rational& epsilon = Rational(0),
                       bool degrade = false, const OracleLimits& limits = {});

/// Profile with caller-supplied estimates (validated against the bracket).
MmsProfile mms_profile_with_estimates(const Instance& inst, std::vector<Rational> estimates,
                                      const Rational& epsilon, const OracleLimits& limits = {});

nlohmann::json profile_to_json(const MmsProfile& p);

struct WelfareOptimum {
  Allocation allocation;
  Rational welfare;
};

/// Welfare-maximizing complete allocation. Additive: each good goes to its
/// highest-value agent (lowest index on ties). Explicit: exhaustive search.
WelfareOptimum max_welfare(const Instance& inst, const OracleLimits& limits = {});

/// A fairness constraint for the constrained optimum.
struct FairnessProperty {
  enum class Kind { none, ef1, prop1, alpha_mms } kind = Kind::ef1;
  Rational alpha;

  static FairnessProperty ef1() { return {Kind::ef1, {}}; }
  static FairnessProperty prop1() { return {Kind::prop1, {}}; }
  static FairnessProperty alpha_mms(Rational a) { return {Kind::alpha_mms, std::move(a)}; }
  static FairnessProperty unconstrained() { return {Kind::none, {}}; }
};

/// Best complete allocation satisfying the property. `allocation` is empty
/// when no allocation qualifies. Ties resolve to the lexicographically
/// smallest good-to-agent assignment.
struct ConstrainedOptimum {
  std::optional<Allocation> allocation;
  Rational welfare;
  std::uint64_t leaves_checked = 0;
};

/// Pruned depth-first scan fanned out across OpenMP threads. `profile` is
/// needed for alpha_mms and computed on demand when absent.
ConstrainedOptimum constrained_opt(const Instance& inst, const FairnessProperty& property,
                                   const OracleLimits& limits = {},
                                   const MmsProfile* profile = nullptr);

/// Serial reference: plain odometer over all n^m allocations, each checked
/// with the public fairness predicates. Kept for cross-checking.
ConstrainedOptimum constrained_opt_reference(const Instance& inst,
                                             const FairnessProperty& property,
                                             const OracleLimits& limits = {},
                                             const MmsProfile* profile = nullptr);

struct PriceOfFairness {
  Rational opt;
  Rational fair_opt;
  /// opt / fair_opt; empty when fair_opt is zero and opt positive.
  std::optional<Rational> ratio;
  std::optional<Allocation> fair_allocation;
};

PriceOfFairness price_of_fairness(const Instance& inst, const FairnessProperty& property,
                                  const OracleLimits& limits = {});

/// n^m, saturating at UINT64_MAX.
std::uint64_t allocation_count(std::size_t n, std::size_t m);

}  // namespace fairdiv
