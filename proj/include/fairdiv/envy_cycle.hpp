#pragma once

#include <stdexcept>

#include "fairdiv/metrics.hpp"

namespace fairdiv {

/// Raised when extend_ef1 receives a partial allocation that is not EF1.
class NotEf1 : public std::invalid_argument {
 public:
  NotEf1(const std::string& what, Violation witness)
      : std::invalid_argument(what), witness(std::move(witness)) {}
  Violation witness;
};

struct EnvyCycleOptions {
  /// Re-run is_ef1 and the value-monotonicity check after every step.
  bool check_invariants = false;
};

struct EnvyCycleStats {
  std::size_t rotations = 0;
  std::size_t additions = 0;
  [[nodiscard]] std::size_t steps() const { return rotations + additions; }
};

/// Envy-cycle elimination. Unallocated goods are handed out in ascending
/// order, each to the lowest-index agent nobody envies; when every agent is
/// envied, a cycle is rotated first. Every agent's value is non-decreasing.
Allocation extend_ef1(const Instance& inst, const Allocation& partial,
                      const EnvyCycleOptions& options = {}, EnvyCycleStats* stats = nullptr);

}  // namespace fairdiv
