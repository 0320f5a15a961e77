#pragma once

#include <optional>
#include <vector>

#include "fairdiv/instance.hpp"

namespace fairdiv {

/// Row-per-agent, column-per-good nonnegative weights.
using WeightMatrix = std::vector<std::vector<Rational>>;

struct Matching {
  /// Good matched to each agent; empty when the agent was matched to a
  /// padding column (only possible when m < n).
  std::vector<std::optional<Good>> assignment;
  Rational weight;
};

/// Maximum-weight matching covering every row. When there are fewer columns
/// than rows, zero-weight padding columns are added. Among optimal matchings
/// the lexicographically smallest (agent 1's good first, padding last) is
/// returned.
Matching max_weight_left_perfect_matching(const WeightMatrix& w);

/// Weights w(i, g) = v_i({g}).
WeightMatrix singleton_weights(const Instance& inst);

}  // namespace fairdiv
