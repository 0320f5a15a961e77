// Exact maximin share computation.
//
// Additive valuations use a bin-completion branch and bound: bundles are
// built one at a time, each containing the largest remaining good, and each
// bundle is minimal relative to the incumbent (dropping its smallest good
// brings it to or below the incumbent). Failed (remaining-set, bundles-left)
// states are memoized. Explicit valuations use a memoized subset recursion.

#include <algorithm>
#include <bit>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "fairdiv/oracles.hpp"

namespace fairdiv {

namespace {

struct StateKey {
  GoodMask rem;
  std::size_t bins;
  bool operator==(const StateKey&) const = default;
};

struct StateHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    std::uint64_t h = k.rem * 0x9E3779B97F4A7C15ULL;
    h ^= (k.bins + 0x7F4A7C15ULL) + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

constexpr std::size_t kMemoLimit = 1u << 22;

template <typename Int>
class MaxMinPartition {
 public:
  MaxMinPartition(std::vector<Int> items, std::size_t k, std::uint64_t budget)
      : items_(std::move(items)), k_(k), budget_(budget) {
    std::sort(items_.begin(), items_.end(), std::greater<>());
  }

  Int solve() {
    if (items_.size() < k_) return Int(0);
    Int total(0);
    for (const auto& x : items_) total += x;
    if (k_ == 1) return total;
    best_ = greedy_lower_bound();
    const Int ceiling = total / Int(static_cast<long>(k_));
    if (best_ >= ceiling) return best_;
    const GoodMask all = items_.size() == 64 ? ~GoodMask{0}
                                             : (GoodMask{1} << items_.size()) - 1;
    search(all, k_, total, Int(0), true);
    return best_;
  }

 private:
  // Longest-processing-time greedy: a feasible partition's minimum.
  Int greedy_lower_bound() const {
    std::vector<Int> bins(k_, Int(0));
    for (const auto& x : items_) *std::min_element(bins.begin(), bins.end()) += x;
    return *std::min_element(bins.begin(), bins.end());
  }

  Int rem_sum(GoodMask rem) const {
    Int s(0);
    for (GoodMask r = rem; r != 0; r &= r - 1) s += items_[std::countr_zero(r)];
    return s;
  }

  void tick() {
    if (++nodes_ > budget_)
      throw OracleInfeasible("maximin share search exceeded its node budget");
  }

  // `cur_min` is the smallest closed bundle so far; `unbounded` means none.
  void search(GoodMask rem, std::size_t bins_left, const Int& sum, const Int& cur_min,
              bool unbounded) {
    tick();
    if (bins_left == 1) {
      const Int cand = unbounded ? sum : std::min(cur_min, sum);
      if (cand > best_) best_ = cand;
      return;
    }
    if (sum <= best_ * Int(static_cast<long>(bins_left))) return;
    const StateKey key{rem, bins_left};
    if (failed_.count(key)) return;
    const Int before = best_;

    // Suffix sums over the remaining goods in index order.
    std::vector<Good> idx;
    for (GoodMask r = rem; r != 0; r &= r - 1) idx.push_back(std::countr_zero(r));
    std::vector<Int> suffix(idx.size() + 1, Int(0));
    for (std::size_t p = idx.size(); p-- > 0;) suffix[p] = suffix[p + 1] + items_[idx[p]];

    const Good x = idx[0];
    extend(rem, bins_left, sum, cur_min, unbounded, idx, suffix, GoodMask{1} << x, items_[x],
           1);

    if (best_ == before && failed_.size() < kMemoLimit) failed_.insert(key);
  }

  // Tries `bin | {idx[p]}` for p >= start; `bin` has value <= incumbent.
  void try_bin(GoodMask rem, std::size_t bins_left, const Int& sum, const Int& cur_min,
               bool unbounded, GoodMask bin, const Int& bin_sum) {
    const Int next_min = unbounded ? bin_sum : std::min(cur_min, bin_sum);
    search(rem & ~bin, bins_left - 1, sum - bin_sum, next_min, false);
  }

  void extend(GoodMask rem, std::size_t bins_left, const Int& sum, const Int& cur_min,
              bool unbounded, const std::vector<Good>& idx, const std::vector<Int>& suffix,
              GoodMask bin, const Int& bin_sum, std::size_t start) {
    if (bin_sum > best_) {
      try_bin(rem, bins_left, sum, cur_min, unbounded, bin, bin_sum);
      if (bin_sum > best_) return;  // still terminal: larger supersets are not minimal
    }
    const Int* prev = nullptr;
    for (std::size_t p = start; p < idx.size(); ++p) {
      if (bin_sum + suffix[p] <= best_) break;
      const Int& val = items_[idx[p]];
      if (prev != nullptr && *prev == val) continue;  // identical good already tried here
      prev = &val;
      extend(rem, bins_left, sum, cur_min, unbounded, idx, suffix,
             bin | (GoodMask{1} << idx[p]), bin_sum + val, p + 1);
    }
  }

  std::vector<Int> items_;
  std::size_t k_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  Int best_{0};
  std::unordered_set<StateKey, StateHash> failed_;
};

Rational additive_mms(const Valuation& v, std::size_t k, const Bundle& goods,
                      const OracleLimits& limits) {
  std::vector<Rational> positive;
  for (Good g : goods)
    if (!v.good_value(g).is_zero()) positive.push_back(v.good_value(g));
  if (positive.size() < k) return Rational(0);
  if (positive.size() > 64)
    throw OracleInfeasible("maximin share oracle supports at most 64 positively valued goods");

  // Common denominator: the search runs on integers.
  mpz_class denom = 1;
  for (const auto& x : positive) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(),
                                         x.raw().get_den_mpz_t());
  std::vector<mpz_class> scaled;
  mpz_class total = 0;
  for (const auto& x : positive) {
    scaled.push_back(x.raw().get_num() * (denom / x.raw().get_den()));
    total += scaled.back();
  }

  mpq_class result;
  if (mpz_sizeinbase(total.get_mpz_t(), 2) < 62) {
    std::vector<long> small;
    for (const auto& s : scaled) small.push_back(s.get_si());
    MaxMinPartition<long> solver(std::move(small), k, limits.mms_node_budget);
    result = mpq_class(mpz_class(solver.solve()), denom);
  } else {
    MaxMinPartition<mpz_class> solver(std::move(scaled), k, limits.mms_node_budget);
    result = mpq_class(solver.solve(), denom);
  }
  return Rational(std::move(result));
}

class ExplicitMms {
 public:
  explicit ExplicitMms(const Valuation& v) : v_(v) {}

  Rational solve(GoodMask mask, std::size_t k) {
    if (mask == 0) return Rational(0);
    if (k == 1) return v_.value(mask);
    const StateKey key{mask, k};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const GoodMask low = mask & (0 - mask);
    const GoodMask rest = mask ^ low;
    Rational best;
    bool any = false;
    // Bundle containing the lowest good: low | sub for every submask of rest.
    GoodMask sub = rest;
    while (true) {
      const GoodMask bundle = low | sub;
      const Rational val = v_.value(bundle);
      if (!any || val > best) {
        Rational tail = solve(mask ^ bundle, k - 1);
        const Rational cand = std::min(val, tail);
        if (!any || cand > best) {
          best = cand;
          any = true;
        }
      }
      if (sub == 0) break;
      sub = (sub - 1) & rest;
    }
    memo_.emplace(key, best);
    return best;
  }

 private:
  const Valuation& v_;
  std::unordered_map<StateKey, Rational, StateHash> memo_;
};

}  // namespace

Rational mms_k(const Valuation& v, std::size_t k, const Bundle& goods,
               const OracleLimits& limits) {
  if (k == 0) throw std::invalid_argument("mms_k needs k >= 1");
  const Bundle g = normalize_bundle(goods);
  if (k == 1) return v.value(g);
  if (v.is_additive()) return additive_mms(v, k, g, limits);

  double work = 1.0;
  for (std::size_t i = 0; i < g.size(); ++i) work *= 3.0;
  if (work > static_cast<double>(limits.explicit_mms_cap))
    throw OracleInfeasible("explicit maximin share over " + std::to_string(g.size()) +
                           " goods exceeds the oracle cap");
  ExplicitMms solver(v);
  return solver.solve(to_mask(g), k);
}

}  // namespace fairdiv
