#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairdiv/envy_cycle.hpp"
#include "fairdiv/oracles.hpp"

namespace fairdiv {

struct Ef1AbsResult {
  Allocation allocation;
  /// One matched good per agent (empty bundles for padding matches).
  Allocation matched;
  EnvyCycleStats envy;
};

/// Maximum-weight matching of singletons, then envy-cycle extension.
Ef1AbsResult alg_ef1_abs(const Instance& inst, const EnvyCycleOptions& options = {});

/// Reference allocation for alg_ef1_high. A supplied allocation is trusted
/// (after checking it is complete). Otherwise: additive instances get the
/// exact welfare optimum, explicit ones the exhaustive optimum within the
/// enumeration cap; beyond it OracleInfeasible is thrown.
Allocation reference_allocation(const Instance& inst,
                                const std::optional<Allocation>& supplied = std::nullopt,
                                const OracleLimits& limits = {});

/// One reassignment of the while loop: at iteration t (counted from 1),
/// agent k takes the line positions a..c (0-based, inclusive).
struct Ef1HighStep {
  std::size_t t;
  Agent k;
  std::size_t a;
  std::size_t c;
};

struct Ef1HighResult {
  Allocation allocation;
  /// Partial allocation when the while loop stopped.
  Allocation partial;
  /// line[p] is the good at line position p.
  std::vector<Good> line;
  std::vector<Ef1HighStep> trace;
  std::size_t iterations = 0;
  EnvyCycleStats envy;
};

/// Connected-bundle growth along the line order induced by `reference`,
/// followed by envy-cycle extension. With `check_invariants`, every
/// iteration re-verifies EF1, contiguity of assigned bundles, value
/// monotonicity and the component count bound (std::logic_error on failure).
Ef1HighResult alg_ef1_high(const Instance& inst, const Allocation& reference,
                           bool check_invariants = false);

/// Maximal runs of unassigned line positions, left to right, as [a, b].
std::vector<std::pair<std::size_t, std::size_t>> unassigned_components(
    const std::vector<Good>& line, const Allocation& partial);

struct Ef1Solution {
  Allocation allocation;
  Rational welfare;
  /// "abs" or "high".
  std::string branch;
  Ef1AbsResult abs;
  std::optional<Ef1HighResult> high;
};

/// Best of alg_ef1_abs and alg_ef1_high on scaled instances (ties keep the
/// first); alg_ef1_abs alone otherwise.
Ef1Solution solve_ef1(const Instance& inst, const std::optional<Allocation>& reference = std::nullopt,
                      const OracleLimits& limits = {}, bool check_invariants = false);

}  // namespace fairdiv
