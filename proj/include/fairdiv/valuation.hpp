#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

using Good = std::size_t;
using Agent = std::size_t;
/// Sorted, duplicate-free list of 0-based good indices.
using Bundle = std::vector<Good>;
/// Bitmask over goods; bit g set iff good g is in the set. Only used where
/// the good count is small (explicit tables, enumeration oracles).
using GoodMask = std::uint64_t;

inline constexpr std::size_t kExplicitGoodCap = 20;

GoodMask to_mask(std::span<const Good> bundle);
Bundle from_mask(GoodMask mask);
Bundle normalize_bundle(Bundle bundle);
std::string bundle_str(std::span<const Good> bundle);  // "{1,3}" in 1-based form

/// A monotone set function over m goods, either additive (one value per
/// good) or an explicit table with one entry per subset.
class Valuation {
 public:
  enum class Kind { additive, explicit_table };

  static Valuation additive(std::vector<Rational> values);
  /// `table[mask]` is the value of the subset encoded by mask; size 2^m.
  static Valuation explicit_table(std::size_t num_goods, std::vector<Rational> table,
                                  bool subadditive);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] bool is_additive() const { return kind_ == Kind::additive; }
  [[nodiscard]] std::size_t num_goods() const { return num_goods_; }
  [[nodiscard]] bool claims_subadditive() const { return subadditive_; }

  /// Value query v(S).
  [[nodiscard]] Rational value(std::span<const Good> bundle) const;
  [[nodiscard]] Rational value(GoodMask mask) const;
  /// v({g}).
  [[nodiscard]] const Rational& good_value(Good g) const { return singletons_[g]; }
  [[nodiscard]] Rational total() const;

  [[nodiscard]] const std::vector<Rational>& additive_values() const { return singletons_; }
  [[nodiscard]] const std::vector<Rational>& table() const { return table_; }

  /// Returns a copy scaled by `factor` (every value multiplied).
  [[nodiscard]] Valuation scaled_by(const Rational& factor) const;

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  Kind kind_ = Kind::additive;
  std::size_t num_goods_ = 0;
  bool subadditive_ = true;
  std::vector<Rational> singletons_;
  std::vector<Rational> table_;
};

/// Demand query: a set S maximizing v(S) - sum of prices over S. Ties go to
/// the smallest cardinality, then the lexicographically smallest index list.
/// Explicit valuations over more than `explicit_cap` goods are rejected.
Bundle demand_query(const Valuation& v, std::span<const Rational> prices,
                    std::size_t explicit_cap = kExplicitGoodCap);

}  // namespace fairdiv
