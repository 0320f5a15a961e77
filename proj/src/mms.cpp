#include "fairdiv/mms.hpp"

#include <algorithm>
#include <stdexcept>

#include "fairdiv/metrics.hpp"

namespace fairdiv {

namespace {

void require_additive(const Instance& inst) {
  if (!inst.additive()) throw std::invalid_argument("maximin share solvers need additive valuations");
}

void insert_sorted(Bundle& b, Good g) { b.insert(std::upper_bound(b.begin(), b.end(), g), g); }

}  // namespace

Allocation prop1_subroutine(const Instance& inst, const std::vector<Agent>& agents,
                            const Bundle& goods) {
  require_additive(inst);
  Allocation out(inst.n());
  if (agents.empty()) {
    if (!goods.empty()) throw std::invalid_argument("no agents to receive the goods");
    return out;
  }
  std::vector<Agent> order = agents;
  std::sort(order.begin(), order.end());
  Bundle left = normalize_bundle(goods);
  for (std::size_t turn = 0; !left.empty(); ++turn) {
    const Agent i = order[turn % order.size()];
    const auto& v = inst.valuation(i);
    std::size_t best = 0;
    for (std::size_t k = 1; k < left.size(); ++k)
      if (v.good_value(left[k]) > v.good_value(left[best])) best = k;
    insert_sorted(out.bundles[i], left[best]);
    left.erase(left.begin() + static_cast<long>(best));
  }
  return out;
}

MmsAbsResult alg_mms_abs(const Instance& inst) {
  require_additive(inst);
  const std::size_t n = inst.n(), m = inst.m();
  MmsAbsResult out;
  out.allocation = Allocation(n);
  std::vector<bool> active(n, true), present(m, true);
  std::size_t num_active = n, num_present = m;
  std::vector<Rational> rest(n);
  for (Agent i = 0; i < n; ++i) rest[i] = inst.valuation(i).total();

  while (num_active > 0 && num_present > 0) {
    std::optional<std::pair<Agent, Good>> pick;
    Rational best;
    const Rational twice_active(static_cast<unsigned long>(2 * num_active));
    for (Agent i = 0; i < n; ++i) {
      if (!active[i]) continue;
      const auto& v = inst.valuation(i);
      for (Good g = 0; g < m; ++g) {
        if (!present[g]) continue;
        const Rational& x = v.good_value(g);
        if (x * twice_active < rest[i]) continue;
        if (!pick || x > best) {
          pick = {i, g};
          best = x;
        }
      }
    }
    if (!pick) break;
    const auto [i, g] = *pick;
    out.picks.push_back({i, g, num_active});
    out.allocation.bundles[i] = {g};
    active[i] = false;
    present[g] = false;
    --num_active;
    --num_present;
    for (Agent j = 0; j < n; ++j) rest[j] -= inst.valuation(j).good_value(g);
  }

  Bundle goods;
  for (Good g = 0; g < m; ++g)
    if (present[g]) goods.push_back(g);
  for (Agent i = 0; i < n; ++i)
    if (active[i]) out.prop1_agents.push_back(i);

  if (!out.prop1_agents.empty()) {
    const Allocation rr = prop1_subroutine(inst, out.prop1_agents, goods);
    for (Agent i : out.prop1_agents) out.allocation.bundles[i] = rr.bundles[i];
  } else {
    out.leftover = goods;
    for (Good g : goods) {
      Agent arg = 0;
      for (Agent i = 1; i < n; ++i)
        if (inst.valuation(i).good_value(g) > inst.valuation(arg).good_value(g)) arg = i;
      insert_sorted(out.allocation.bundles[arg], g);
    }
  }
  return out;
}

std::optional<std::string> check_val_share(const Instance& inst, const MmsAbsResult& result) {
  const std::size_t n = inst.n(), t = result.picks.size();
  std::vector<std::size_t> position(n, n + 1);
  for (std::size_t k = 0; k < t; ++k) position[result.picks[k].agent] = k + 1;
  for (Agent i = 0; i < n; ++i) {
    const auto& v = inst.valuation(i);
    const Rational rhs = v.total() / Rational(static_cast<unsigned long>(n));
    Rational telescoped;
    Rational rest = v.total();
    const std::size_t last = std::min(position[i] - 1, t);
    for (std::size_t j = 0; j <= last; ++j) {
      if (j > 0) {
        const auto& pick = result.picks[j - 1];
        telescoped += inst.valuation(pick.agent).good_value(pick.good) /
                      Rational(static_cast<unsigned long>(n - j + 1));
        rest -= v.good_value(pick.good);
      }
      const Rational lhs = telescoped + rest / Rational(static_cast<unsigned long>(n - j));
      if (lhs < rhs)
        return "share inequality fails for agent " + std::to_string(i + 1) + " at j = " +
               std::to_string(j) + ": " + lhs.str() + " < " + rhs.str();
    }
  }
  return std::nullopt;
}

std::size_t MmsHighResult::t_size() const {
  return static_cast<std::size_t>(std::count(in_t.begin(), in_t.end(), true));
}

bool MmsHighResult::covers_all_agents() const {
  for (std::size_t i = 0; i < in_p.size(); ++i)
    if (!in_p[i] && !in_t[i]) return false;
  return true;
}

namespace {

class MmsHigh {
 public:
  MmsHigh(const Instance& inst, const MmsProfile& profile, bool check)
      : inst_(inst), z_(profile.estimates), check_(check), n_(inst.n()) {
    require_additive(inst);
    if (!inst.scaled()) throw std::invalid_argument("Alg-MMS-High needs a scaled instance");
    if (profile.mms.size() != n_ || profile.estimates.size() != n_)
      throw std::invalid_argument("MMS profile does not match the agent count");
    profile.validate();
  }

  MmsHighResult run() {
    const std::size_t m = inst_.m();
    res_.welfare_optimum = max_welfare(inst_).allocation;
    owner_.assign(m, 0);
    for (Agent i = 0; i < n_; ++i) {
      wv_.push_back(inst_.valuation(i).value(res_.welfare_optimum.bundles[i]));
      for (Good g : res_.welfare_optimum.bundles[i]) {
        owner_[g] = i;
        res_.line.push_back(g);
      }
    }
    bundles_.assign(n_, {});
    frozen_.assign(n_, {});
    ever_.assign(n_, false);
    res_.in_p.assign(n_, false);
    res_.in_t.assign(n_, false);
    taken_.assign(m, false);
    classify();

    // Agents with zero maximin share: fewer than n positively valued goods.
    for (Agent i = 0; i < n_; ++i) {
      std::size_t positive = 0;
      for (Good g = 0; g < m; ++g) positive += inst_.valuation(i).good_value(g).is_zero() ? 0 : 1;
      if (positive >= n_) continue;
      if (wv_[i].is_zero())
        join_p(i);
      else
        join_t(i);
      log("zero-mms", 0, i);
    }

    for (Agent i = 0; i < n_; ++i) {
      if (res_.classes[i] != MmsClass::single) continue;
      const Bundle& w = res_.welfare_optimum.bundles[i];
      Good best = w.front();
      for (Good g : w)
        if (value(i, {g}) > value(i, {best})) best = g;
      set_bundle(i, {best});
      res_.in_t[i] = false;
      join_p(i);
      log("single", 0, i);
    }
    singles_done_ = true;
    verify();

    while (true) {
      std::optional<std::pair<Agent, Good>> pick;
      for (Agent a = 0; a < n_ && !pick; ++a) {
        if (placed(a)) continue;
        for (Good h = 0; h < m && !pick; ++h)
          if (!taken_[h] && half_share(a, {h})) pick = {a, h};
      }
      if (!pick) break;
      set_bundle(pick->first, {pick->second});
      place(pick->first);
      log("first-while", 0, pick->first);
    }

    const std::vector<bool> remaining = complement(taken_);
    Bundle k;
    for (std::size_t t = 0; t < m; ++t) {
      const Good g = res_.line[t];
      if (!remaining[g]) continue;
      insert_sorted(k, g);
      const Agent i = owner_[g];
      if (res_.in_t[i] && welfare_share(i, k)) {
        Bundle old = bundles_[i];
        set_bundle(i, k);
        k = std::move(old);
        res_.in_t[i] = false;
        join_p(i);
        log("swap", t + 1, i);
      }
      for (Agent a = 0; a < n_; ++a) {
        if (placed(a) || !half_share(a, k)) continue;
        set_bundle(a, k);
        k.clear();
        place(a);
        log("assign", t + 1, a);
        break;
      }
    }

    for (Agent i = 0; i < n_; ++i) {
      Bundle extra;
      for (Good g : res_.welfare_optimum.bundles[i])
        if (!taken_[g]) extra.push_back(g);
      if (extra.empty()) continue;
      for (Good g : extra) {
        insert_sorted(bundles_[i], g);
        taken_[g] = true;
      }
      if (res_.in_p[i]) frozen_[i] = bundles_[i];
      log("leftover", 0, i);
    }

    if (check_) {
      if (!res_.covers_all_agents()) throw std::logic_error("some agent ended outside P and T");
      const std::size_t ts = res_.t_size();
      if (ts * ts > 16 * n_) throw std::logic_error("|T| exceeds 4 sqrt(n)");
    }
    res_.allocation = Allocation(bundles_);
    return std::move(res_);
  }

 private:
  [[nodiscard]] Rational value(Agent i, const Bundle& b) const { return inst_.valuation(i).value(b); }

  // v_i(S) >= Z_i / 2.
  [[nodiscard]] bool half_share(Agent i, const Bundle& b) const {
    return Rational(2) * value(i, b) >= z_[i];
  }
  // v_i(S) >= v_i(W*_i) / (3 sqrt n).
  [[nodiscard]] bool welfare_share(Agent i, const Bundle& b) const {
    return times_sqrt_at_least(Rational(3) * value(i, b), n_, wv_[i]);
  }

  [[nodiscard]] bool placed(Agent i) const { return res_.in_p[i] || res_.in_t[i]; }

  void classify() {
    for (Agent i = 0; i < n_; ++i) {
      if (times_sqrt_at_least(Rational(3) * z_[i], n_, Rational(2) * wv_[i])) {
        res_.classes.push_back(MmsClass::mms);
        continue;
      }
      bool single = false;
      for (Good g : res_.welfare_optimum.bundles[i]) single = single || welfare_share(i, {g});
      res_.classes.push_back(single ? MmsClass::single : MmsClass::hard);
    }
  }

  void set_bundle(Agent i, Bundle b) {
    for (Good g : bundles_[i]) taken_[g] = false;
    for (Good g : b) taken_[g] = true;
    bundles_[i] = std::move(b);
  }

  void join_p(Agent i) {
    res_.in_p[i] = true;
    ever_[i] = true;
    frozen_[i] = bundles_[i];
  }
  void join_t(Agent i) {
    res_.in_t[i] = true;
    ever_[i] = true;
  }
  void place(Agent a) {
    if (welfare_share(a, bundles_[a]))
      join_p(a);
    else
      join_t(a);
  }

  static std::vector<bool> complement(const std::vector<bool>& v) {
    std::vector<bool> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = !v[k];
    return out;
  }

  void log(const char* step, std::size_t t, Agent i) {
    res_.trace.push_back({step, t, i, bundles_[i],
                          res_.in_p[i] ? "P" : (res_.in_t[i] ? "T" : "-")});
    verify();
  }

  void verify() const {
    if (!check_) return;
    for (Agent i = 0; i < n_; ++i) {
      if (res_.in_p[i] && res_.in_t[i]) throw std::logic_error("agent in both P and T");
      if (ever_[i] && !placed(i)) throw std::logic_error("agent left P and T");
      if (placed(i) && !half_share(i, bundles_[i]))
        throw std::logic_error("placed agent below half her estimate");
      if (res_.in_p[i] && !welfare_share(i, bundles_[i]))
        throw std::logic_error("permanent agent below the welfare share");
      if (res_.in_p[i] && bundles_[i] != frozen_[i])
        throw std::logic_error("permanent bundle changed");
      if (singles_done_ && res_.in_t[i] && res_.classes[i] != MmsClass::hard)
        throw std::logic_error("temporary agent outside the hard class");
    }
  }

  const Instance& inst_;
  const std::vector<Rational>& z_;
  bool check_;
  std::size_t n_;
  MmsHighResult res_;
  std::vector<Rational> wv_;
  std::vector<Agent> owner_;
  std::vector<Bundle> bundles_, frozen_;
  std::vector<bool> ever_, taken_;
  bool singles_done_ = false;
};

}  // namespace

MmsHighResult alg_mms_high(const Instance& inst, const MmsProfile& profile, bool check_invariants) {
  return MmsHigh(inst, profile, check_invariants).run();
}

MmsSolution solve_half_mms(const Instance& inst, const Rational& epsilon, const MmsProfile* profile,
                           const OracleLimits& limits, bool check_invariants) {
  require_additive(inst);
  MmsSolution out;
  out.abs = alg_mms_abs(inst);
  out.allocation = out.abs.allocation;
  out.welfare = social_welfare(inst, out.allocation);
  out.branch = "abs";
  if (!inst.scaled()) return out;
  out.profile = profile ? *profile : mms_profile(inst, epsilon, true, limits);
  out.high = alg_mms_high(inst, *out.profile, check_invariants);
  const Rational high_welfare = social_welfare(inst, out.high->allocation);
  if (high_welfare > out.welfare) {
    out.allocation = out.high->allocation;
    out.welfare = high_welfare;
    out.branch = "high";
  }
  return out;
}

}  // namespace fairdiv
