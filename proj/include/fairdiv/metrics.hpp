#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "fairdiv/instance.hpp"

namespace fairdiv {

struct MmsProfile;

/// One candidate good g and the value agent `agent` assigns to the compared
/// bundle with g removed (EF1) or added to her own bundle (Prop1).
struct RemovalCheck {
  Good good;
  Rational residual;
};

/// Failure witness. For EF1 `other` is the envied agent and `removals`
/// lists every removal candidate of the envied bundle; for Prop1 `removals`
/// lists v_i(A_i u {g}) for every scoped good; for alpha-MMS it is empty.
struct Violation {
  Agent agent = 0;
  std::optional<Agent> other;
  Rational own_value;
  Rational threshold;
  std::vector<RemovalCheck> removals;
};

/// Success certificate: agent `agent` is satisfied via good `good` (for
/// EF1, relative to `other`). `good` is empty when no good is needed.
struct Certificate {
  Agent agent = 0;
  std::optional<Agent> other;
  std::optional<Good> good;
};

struct FairnessVerdict {
  bool holds = true;
  std::vector<Certificate> certificates;
  std::optional<Violation> violation;
};

/// Restricts Prop1 to agents A and goods G with threshold v_i(G)/|A|.
struct Prop1Scope {
  std::vector<Agent> agents;
  Bundle goods;
};

/// Sum of v_i(A_i). Throws std::invalid_argument on overlapping bundles.
Rational social_welfare(const Instance& inst, const Allocation& alloc);

FairnessVerdict is_ef1(const Instance& inst, const Allocation& alloc);
FairnessVerdict is_prop1(const Instance& inst, const Allocation& alloc,
                         const std::optional<Prop1Scope>& scope = std::nullopt);
/// Throws std::invalid_argument when the profile lacks an agent.
FairnessVerdict is_alpha_mms(const Instance& inst, const Allocation& alloc,
                             const Rational& alpha, const MmsProfile& mms);

enum class PropertyKind { ef1, prop1, alpha_mms };

/// Re-evaluates a failure witness with value queries; true iff it still
/// demonstrates a violation of the named property.
bool witness_confirms(const Instance& inst, const Allocation& alloc, PropertyKind kind,
                      const Violation& w);

nlohmann::json verdict_to_json(const FairnessVerdict& v);

}  // namespace fairdiv
