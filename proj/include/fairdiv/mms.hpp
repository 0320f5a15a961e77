#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairdiv/oracles.hpp"

namespace fairdiv {

/// Round-robin over `agents` (ascending): each picks her most valued
/// remaining good of `goods`, lowest index on ties, until none remain.
/// Additive valuations only. Returns an n-agent allocation of `goods`.
Allocation prop1_subroutine(const Instance& inst, const std::vector<Agent>& agents,
                            const Bundle& goods);

struct MmsAbsPick {
  Agent agent;
  Good good;
  /// |A| when the pick was made.
  std::size_t active;
};

struct MmsAbsResult {
  Allocation allocation;
  /// Singleton picks of the while loop, in order.
  std::vector<MmsAbsPick> picks;
  /// Agents served by the round-robin step.
  std::vector<Agent> prop1_agents;
  /// Goods left after every agent took a singleton; each went to the agent
  /// valuing it most.
  Bundle leftover;
};

/// Singleton argmax loop, then round-robin Prop1 on the rest.
MmsAbsResult alg_mms_abs(const Instance& inst);

/// Re-checks the telescoping share inequality for every agent and every
/// prefix of the singleton picks. Returns a description of the first
/// failure, or nothing.
std::optional<std::string> check_val_share(const Instance& inst, const MmsAbsResult& result);

enum class MmsClass { mms, single, hard };

/// One state change of Alg-MMS-High.
struct MmsHighEvent {
  /// zero-mms, single, first-while, swap, assign or leftover.
  std::string step;
  /// Loop index t for swap/assign (1-based line position), else 0.
  std::size_t t = 0;
  Agent agent = 0;
  Bundle bundle;
  /// Membership after the event: "P", "T" or "-".
  std::string membership;
};

struct MmsHighResult {
  Allocation allocation;
  Allocation welfare_optimum;
  std::vector<Good> line;
  std::vector<MmsClass> classes;
  std::vector<bool> in_p;
  std::vector<bool> in_t;
  std::vector<MmsHighEvent> trace;

  [[nodiscard]] std::size_t t_size() const;
  [[nodiscard]] bool covers_all_agents() const;
};

/// Scaled additive instances only (std::invalid_argument otherwise). Uses
/// profile.estimates as Z. With `check_invariants`, the bookkeeping
/// invariants are re-verified after every mutation (std::logic_error).
MmsHighResult alg_mms_high(const Instance& inst, const MmsProfile& profile,
                           bool check_invariants = false);

struct MmsSolution {
  Allocation allocation;
  Rational welfare;
  /// "abs" or "high".
  std::string branch;
  MmsAbsResult abs;
  std::optional<MmsHighResult> high;
  std::optional<MmsProfile> profile;
};

/// Best of alg_mms_abs and alg_mms_high on scaled instances (ties keep the
/// first); alg_mms_abs alone otherwise. Without a profile, one is computed
/// with estimates Z_i = (1 - epsilon) * MMS_i.
MmsSolution solve_half_mms(const Instance& inst, const Rational& epsilon,
                           const MmsProfile* profile = nullptr, const OracleLimits& limits = {},
                           bool check_invariants = false);

}  // namespace fairdiv
