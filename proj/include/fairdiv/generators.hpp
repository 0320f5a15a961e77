#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/instance.hpp"

namespace fairdiv {

/// Adversarial family request. `epsilon` is used by mms-unscaled and
/// supermodular (default 1/100) and ignored elsewhere.
struct FamilySpec {
  std::string family;
  std::size_t n = 1;
  std::optional<Rational> epsilon;
};

/// ef1-unscaled, mms-unscaled, mms-scaled-sqrt, prop1-unscaled,
/// prop1-scaled, supermodular.
const std::vector<std::string>& adversarial_families();

/// Throws std::invalid_argument on an unknown family or bad parameters.
Instance generate_adversarial(const FamilySpec& spec);

enum class Distribution { uniform_rational, dirichlet_scaled };

Distribution parse_distribution(const std::string& name);
std::string distribution_name(Distribution d);

/// Seeded additive instance.
///  uniform-rational: v_i(g) = p/q with q uniform in [1, 1000], p in [0, q].
///  dirichlet-scaled: quantized exponential weights, renormalized so that
///  v_i([m]) = 1 exactly.
Instance generate_random(std::size_t n, std::size_t m, Distribution dist, std::uint64_t seed);

/// Seeded explicit subadditive instance (m <= 20): each agent's valuation is
/// the maximum of two additive clauses with integer weights in [0, 9].
Instance generate_random_subadditive(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace fairdiv
