#include "fairdiv/valuation.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace fairdiv {

GoodMask to_mask(std::span<const Good> bundle) {
  GoodMask mask = 0;
  for (Good g : bundle) {
    if (g >= 64) throw std::out_of_range("good index exceeds mask width");
    mask |= GoodMask{1} << g;
  }
  return mask;
}

Bundle from_mask(GoodMask mask) {
  Bundle out;
  while (mask != 0) {
    out.push_back(static_cast<Good>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

Bundle normalize_bundle(Bundle bundle) {
  std::sort(bundle.begin(), bundle.end());
  bundle.erase(std::unique(bundle.begin(), bundle.end()), bundle.end());
  return bundle;
}

std::string bundle_str(std::span<const Good> bundle) {
  std::string s = "{";
  for (std::size_t k = 0; k < bundle.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(bundle[k] + 1);
  }
  return s + "}";
}

Valuation Valuation::additive(std::vector<Rational> values) {
  Valuation v;
  v.kind_ = Kind::additive;
  v.num_goods_ = values.size();
  v.subadditive_ = true;
  v.singletons_ = std::move(values);
  return v;
}

Valuation Valuation::explicit_table(std::size_t num_goods, std::vector<Rational> table,
                                    bool subadditive) {
  if (num_goods > kExplicitGoodCap)
    throw std::invalid_argument("explicit valuation over " + std::to_string(num_goods) +
                                " goods exceeds the cap of " +
                                std::to_string(kExplicitGoodCap));
  if (table.size() != (std::size_t{1} << num_goods))
    throw std::invalid_argument("explicit table size does not match 2^m");
  Valuation v;
  v.kind_ = Kind::explicit_table;
  v.num_goods_ = num_goods;
  v.subadditive_ = subadditive;
  v.singletons_.reserve(num_goods);
  for (std::size_t g = 0; g < num_goods; ++g) v.singletons_.push_back(table[std::size_t{1} << g]);
  v.table_ = std::move(table);
  return v;
}

Rational Valuation::value(std::span<const Good> bundle) const {
  if (kind_ == Kind::explicit_table) return table_[to_mask(bundle)];
  Rational sum;
  for (Good g : bundle) sum += singletons_[g];
  return sum;
}

Rational Valuation::value(GoodMask mask) const {
  if (kind_ == Kind::explicit_table) return table_[mask];
  Rational sum;
  while (mask != 0) {
    sum += singletons_[static_cast<std::size_t>(std::countr_zero(mask))];
    mask &= mask - 1;
  }
  return sum;
}

Rational Valuation::total() const {
  if (kind_ == Kind::explicit_table) return table_.back();
  Rational sum;
  for (const auto& x : singletons_) sum += x;
  return sum;
}

Valuation Valuation::scaled_by(const Rational& factor) const {
  Valuation out = *this;
  for (auto& x : out.singletons_) x *= factor;
  for (auto& x : out.table_) x *= factor;
  return out;
}

namespace {

// Lexicographic order on the sorted index lists of two equal-size masks.
bool lex_less(GoodMask a, GoodMask b) {
  while (a != 0 && b != 0) {
    const int ga = std::countr_zero(a);
    const int gb = std::countr_zero(b);
    if (ga != gb) return ga < gb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

}  // namespace

Bundle demand_query(const Valuation& v, std::span<const Rational> prices,
                    std::size_t explicit_cap) {
  const std::size_t m = v.num_goods();
  if (prices.size() != m) throw std::invalid_argument("price vector length differs from m");
  for (const auto& p : prices)
    if (p.is_negative()) throw std::invalid_argument("negative price");

  if (v.is_additive()) {
    // Zero-profit goods are dropped: the smallest maximizing set.
    Bundle out;
    for (Good g = 0; g < m; ++g)
      if (v.good_value(g) > prices[g]) out.push_back(g);
    return out;
  }

  if (m > explicit_cap) throw std::runtime_error("demand query infeasible");
  const GoodMask full = m == 0 ? 0 : (GoodMask{1} << m) - 1;
  GoodMask best = 0;
  Rational best_profit;  // empty set: profit 0
  for (GoodMask s = 1; s <= full; ++s) {
    Rational profit = v.value(s);
    for (GoodMask r = s; r != 0; r &= r - 1) profit -= prices[std::countr_zero(r)];
    if (profit > best_profit) {
      best = s;
      best_profit = profit;
    } else if (profit == best_profit) {
      const int cs = std::popcount(s), cb = std::popcount(best);
      if (cs < cb || (cs == cb && lex_less(s, best))) best = s;
    }
  }
  return from_mask(best);
}

}  // namespace fairdiv
