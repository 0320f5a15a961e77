#include "fairdiv/instance.hpp"

#include <algorithm>

namespace fairdiv {

namespace {

std::string agent_label(Agent a) { return "agent " + std::to_string(a + 1); }

[[noreturn]] void fail(const std::string& axiom, Agent agent, const std::string& witness) {
  throw InvalidInstance(axiom + ": " + agent_label(agent) + ", " + witness);
}

}  // namespace

void validate_valuation(const Valuation& v, Agent agent) {
  if (v.is_additive()) {
    for (Good g = 0; g < v.num_goods(); ++g)
      if (v.good_value(g).is_negative())
        fail("not nonnegative", agent, "S=" + bundle_str(Bundle{g}));
    return;
  }

  const auto& t = v.table();
  const std::size_t m = v.num_goods();
  const GoodMask full = (GoodMask{1} << m) - 1;
  if (!t[0].is_zero()) fail("not normalized", agent, "v({}) = " + t[0].str());
  for (GoodMask s = 0; s <= full; ++s)
    if (t[s].is_negative()) fail("not nonnegative", agent, "S=" + bundle_str(from_mask(s)));
  // Single-good steps suffice for monotonicity by transitivity.
  for (GoodMask s = 0; s <= full; ++s)
    for (Good g = 0; g < m; ++g) {
      const GoodMask bit = GoodMask{1} << g;
      if ((s & bit) == 0 && t[s] > t[s | bit])
        fail("not monotone", agent,
             "A=" + bundle_str(from_mask(s)) + " B=" + bundle_str(from_mask(s | bit)));
    }
  if (!v.claims_subadditive()) return;
  // Under monotonicity it is enough to check disjoint pairs: 3^m work.
  for (GoodMask u = 1; u <= full; ++u) {
    for (GoodMask s = (0 - u) & u; s != u; s = (s - u) & u) {
      const GoodMask r = u ^ s;
      if (t[u] > t[s] + t[r])
        fail("not subadditive", agent,
             "S=" + bundle_str(from_mask(s)) + " T=" + bundle_str(from_mask(r)));
    }
  }
}

bool is_supermodular(const Valuation& v) {
  if (v.is_additive()) return true;
  const GoodMask full = (GoodMask{1} << v.num_goods()) - 1;
  const auto& t = v.table();
  for (GoodMask s = 0; s <= full; ++s)
    for (GoodMask r = 0; r <= full; ++r)
      if (t[s | r] + t[s & r] < t[s] + t[r]) return false;
  return true;
}

Instance::Instance(std::vector<Valuation> valuations, std::size_t num_goods, bool scaled)
    : valuations_(std::move(valuations)), num_goods_(num_goods), scaled_(scaled) {
  if (valuations_.empty()) throw InvalidInstance("instance needs at least one agent");
  for (Agent i = 0; i < valuations_.size(); ++i) {
    const auto& v = valuations_[i];
    if (v.num_goods() != num_goods_)
      throw InvalidInstance(agent_label(i) + " valuation covers " +
                            std::to_string(v.num_goods()) + " goods, expected " +
                            std::to_string(num_goods_));
    if (v.kind() != valuations_.front().kind())
      throw InvalidInstance("mixed valuation kinds in one instance");
    validate_valuation(v, i);
  }
  if (scaled_) {
    for (Agent i = 0; i < valuations_.size(); ++i) {
      const Rational total = valuations_[i].total();
      if (total != Rational(1))
        throw InvalidInstance("scaled flag mismatch: " + agent_label(i) +
                              " has v([m]) = " + total.str());
    }
  }
}

bool Instance::additive() const { return valuations_.front().is_additive(); }

Rational Instance::total_value() const {
  Rational sum;
  for (const auto& v : valuations_) sum += v.total();
  return sum;
}

Instance Instance::rescaled() const {
  if (!additive()) throw std::invalid_argument("only additive instances can be rescaled");
  std::vector<Valuation> out;
  bool all_positive = true;
  for (const auto& v : valuations_) {
    const Rational total = v.total();
    if (total.is_zero()) {
      all_positive = false;
      out.push_back(v);
    } else {
      out.push_back(v.scaled_by(Rational(1) / total));
    }
  }
  return Instance(std::move(out), num_goods_, all_positive);
}

bool Allocation::complete(std::size_t m) const { return unallocated(m).empty(); }

std::vector<Good> Allocation::unallocated(std::size_t m) const {
  std::vector<bool> used(m, false);
  for (const auto& b : bundles)
    for (Good g : b)
      if (g < m) used[g] = true;
  std::vector<Good> out;
  for (Good g = 0; g < m; ++g)
    if (!used[g]) out.push_back(g);
  return out;
}

void validate_allocation(const Allocation& alloc, std::size_t n, std::size_t m) {
  if (alloc.n() != n)
    throw std::invalid_argument("allocation has " + std::to_string(alloc.n()) +
                                " bundles for " + std::to_string(n) + " agents");
  std::vector<int> owner(m, -1);
  for (Agent i = 0; i < n; ++i) {
    for (Good g : alloc.bundles[i]) {
      if (g >= m)
        throw std::invalid_argument("good " + std::to_string(g + 1) + " out of range");
      if (owner[g] >= 0)
        throw std::invalid_argument("overlapping bundles: good " + std::to_string(g + 1) +
                                    " held by agents " + std::to_string(owner[g] + 1) +
                                    " and " + std::to_string(i + 1));
      owner[g] = static_cast<int>(i);
    }
  }
}

}  // namespace fairdiv
