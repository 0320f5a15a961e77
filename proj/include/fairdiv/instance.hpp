#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairdiv/valuation.hpp"

namespace fairdiv {

/// Raised when a valuation or instance breaks one of the model axioms. The
/// message names the axiom, the agent (1-based) and the witness subsets.
class InvalidInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fair-division instance: n agents, m goods, one valuation per agent.
/// Constructed only through validation; immutable afterwards.
class Instance {
 public:
  /// Validates every valuation (normalized, nonnegative, monotone, and
  /// subadditive when claimed) and the scaled claim. Throws InvalidInstance.
  Instance(std::vector<Valuation> valuations, std::size_t num_goods, bool scaled);

  [[nodiscard]] std::size_t n() const { return valuations_.size(); }
  [[nodiscard]] std::size_t m() const { return num_goods_; }
  [[nodiscard]] bool scaled() const { return scaled_; }
  [[nodiscard]] bool additive() const;
  [[nodiscard]] const Valuation& valuation(Agent i) const { return valuations_[i]; }
  [[nodiscard]] const std::vector<Valuation>& valuations() const { return valuations_; }

  /// Sum over agents of v_i([m]).
  [[nodiscard]] Rational total_value() const;

  /// Additive instance with each agent divided by her total (agents with
  /// zero total are left unchanged and the result is then not scaled).
  [[nodiscard]] Instance rescaled() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<Valuation> valuations_;
  std::size_t num_goods_;
  bool scaled_;
};

/// Checks the valuation axioms for agent `agent` (0-based); throws
/// InvalidInstance with a witness on failure.
void validate_valuation(const Valuation& v, Agent agent);

/// Exhaustive supermodularity check v(S u T) + v(S n T) >= v(S) + v(T) for an
/// explicit valuation. Returns false on the first violation.
bool is_supermodular(const Valuation& v);

/// Partial or complete assignment of goods to n agents.
struct Allocation {
  std::vector<Bundle> bundles;

  Allocation() = default;
  explicit Allocation(std::size_t n) : bundles(n) {}
  explicit Allocation(std::vector<Bundle> b) : bundles(std::move(b)) {}

  [[nodiscard]] std::size_t n() const { return bundles.size(); }
  /// True iff every good in [0, m) is assigned.
  [[nodiscard]] bool complete(std::size_t m) const;
  [[nodiscard]] std::vector<Good> unallocated(std::size_t m) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Throws std::invalid_argument if bundles overlap, reference goods outside
/// [0, m), or the agent count differs from n.
void validate_allocation(const Allocation& alloc, std::size_t n, std::size_t m);

}  // namespace fairdiv
