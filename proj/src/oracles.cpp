#include "fairdiv/oracles.hpp"

#include <exception>
#include <limits>

#include "fairdiv/metrics.hpp"

namespace fairdiv {

using nlohmann::json;

void MmsProfile::validate() const {
  if (epsilon.is_negative() || epsilon >= Rational(1))
    throw std::invalid_argument("epsilon must lie in [0, 1)");
  if (estimates.size() != mms.size())
    throw std::invalid_argument("estimate count does not match the agent count");
  const Rational keep = Rational(1) - epsilon;
  for (std::size_t i = 0; i < mms.size(); ++i) {
    if (estimates[i] > mms[i] || estimates[i] < keep * mms[i])
      throw std::invalid_argument("estimate for agent " + std::to_string(i + 1) + " (" +
                                  estimates[i].str() + ") outside [(1-eps)*MMS, MMS] with MMS = " +
                                  mms[i].str());
  }
}

namespace {

std::vector<Rational> exact_shares(const Instance& inst, const OracleLimits& limits) {
  const std::size_t n = inst.n();
  Bundle all;
  for (Good g = 0; g < inst.m(); ++g) all.push_back(g);
  std::vector<Rational> out(n);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      out[i] = mms_k(inst.valuation(i), n, all, limits);
    } catch (...) {
#pragma omp critical(fairdiv_mms_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace

MmsProfile mms_profile(const Instance& inst, const Rational& epsilon, bool degrade,
                       const OracleLimits& limits) {
  MmsProfile p;
  p.epsilon = epsilon;
  p.mms = exact_shares(inst, limits);
  const Rational keep = Rational(1) - epsilon;
  for (const auto& x : p.mms) p.estimates.push_back(degrade ? keep * x : x);
  p.validate();
  return p;
}

MmsProfile mms_profile_with_estimates(const Instance& inst, std::vector<Rational> estimates,
                                      const Rational& epsilon, const OracleLimits& limits) {
  MmsProfile p;
  p.epsilon = epsilon;
  p.mms = exact_shares(inst, limits);
  p.estimates = std::move(estimates);
  p.validate();
  return p;
}

json profile_to_json(const MmsProfile& p) {
  json agents = json::array();
  for (std::size_t i = 0; i < p.mms.size(); ++i)
    agents.push_back({{"agent", i + 1}, {"mms", p.mms[i].str()},
                      {"estimate", p.estimates[i].str()}});
  return {{"epsilon", p.epsilon.str()}, {"agents", agents}};
}

WelfareOptimum max_welfare(const Instance& inst, const OracleLimits& limits) {
  if (!inst.additive()) {
    auto best = constrained_opt(inst, FairnessProperty::unconstrained(), limits);
    return {std::move(*best.allocation), best.welfare};
  }
  WelfareOptimum out{Allocation(inst.n()), Rational(0)};
  for (Good g = 0; g < inst.m(); ++g) {
    Agent arg = 0;
    for (Agent i = 1; i < inst.n(); ++i)
      if (inst.valuation(i).good_value(g) > inst.valuation(arg).good_value(g)) arg = i;
    out.allocation.bundles[arg].push_back(g);
    out.welfare += inst.valuation(arg).good_value(g);
  }
  return out;
}

PriceOfFairness price_of_fairness(const Instance& inst, const FairnessProperty& property,
                                  const OracleLimits& limits) {
  PriceOfFairness out;
  out.opt = max_welfare(inst, limits).welfare;
  auto fair = constrained_opt(inst, property, limits);
  out.fair_allocation = std::move(fair.allocation);
  out.fair_opt = fair.welfare;
  if (!out.fair_opt.is_zero())
    out.ratio = out.opt / out.fair_opt;
  else if (out.opt.is_zero())
    out.ratio = Rational(1);
  return out;
}

std::uint64_t allocation_count(std::size_t n, std::size_t m) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t c = 1;
  for (std::size_t k = 0; k < m; ++k) {
    if (n != 0 && c > kMax / n) return kMax;
    c *= n;
  }
  return c;
}

}  // namespace fairdiv
