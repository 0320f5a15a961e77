#include "fairdiv/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "fairdiv/oracles.hpp"

namespace fairdiv {

using nlohmann::json;

Rational social_welfare(const Instance& inst, const Allocation& alloc) {
  validate_allocation(alloc, inst.n(), inst.m());
  Rational sw;
  for (Agent i = 0; i < inst.n(); ++i) sw += inst.valuation(i).value(alloc.bundles[i]);
  return sw;
}

namespace {

Bundle without(const Bundle& b, Good g) {
  Bundle out;
  out.reserve(b.size());
  for (Good x : b)
    if (x != g) out.push_back(x);
  return out;
}

Bundle with(const Bundle& b, Good g) {
  Bundle out = b;
  if (!std::binary_search(out.begin(), out.end(), g))
    out.insert(std::upper_bound(out.begin(), out.end(), g), g);
  return out;
}

}  // namespace

FairnessVerdict is_ef1(const Instance& inst, const Allocation& alloc) {
  validate_allocation(alloc, inst.n(), inst.m());
  FairnessVerdict verdict;
  for (Agent i = 0; i < inst.n(); ++i) {
    const auto& v = inst.valuation(i);
    const Rational own = v.value(alloc.bundles[i]);
    for (Agent j = 0; j < inst.n(); ++j) {
      const Bundle& other = alloc.bundles[j];
      if (i == j || other.empty()) continue;
      // Certificate: the removal leaving the least residual value.
      std::vector<RemovalCheck> removals;
      std::optional<std::size_t> best;
      if (v.is_additive()) {
        const Rational whole = v.value(other);
        for (Good g : other) removals.push_back({g, whole - v.good_value(g)});
      } else {
        for (Good g : other) removals.push_back({g, v.value(without(other, g))});
      }
      for (std::size_t k = 0; k < removals.size(); ++k)
        if (!best || removals[k].residual < removals[*best].residual) best = k;
      if (own >= removals[*best].residual) {
        verdict.certificates.push_back({i, j, removals[*best].good});
        continue;
      }
      verdict.holds = false;
      verdict.certificates.clear();
      verdict.violation = Violation{i, j, own, v.value(other), std::move(removals)};
      return verdict;
    }
  }
  return verdict;
}

FairnessVerdict is_prop1(const Instance& inst, const Allocation& alloc,
                         const std::optional<Prop1Scope>& scope) {
  validate_allocation(alloc, inst.n(), inst.m());
  std::vector<Agent> agents;
  Bundle goods;
  if (scope) {
    agents = scope->agents;
    goods = normalize_bundle(scope->goods);
  } else {
    for (Agent i = 0; i < inst.n(); ++i) agents.push_back(i);
    for (Good g = 0; g < inst.m(); ++g) goods.push_back(g);
  }
  FairnessVerdict verdict;
  if (agents.empty()) return verdict;
  const Rational share(static_cast<unsigned long>(agents.size()));
  for (Agent i : agents) {
    const auto& v = inst.valuation(i);
    const Rational threshold = v.value(goods) / share;
    const Bundle& own_bundle = alloc.bundles[i];
    const Rational own = v.value(own_bundle);
    if (own >= threshold) {
      verdict.certificates.push_back({i, std::nullopt, std::nullopt});
      continue;
    }
    std::vector<RemovalCheck> additions;
    std::optional<Good> witness;
    for (Good g : goods) {
      Rational val = v.is_additive()
                         ? (std::binary_search(own_bundle.begin(), own_bundle.end(), g)
                                ? own
                                : own + v.good_value(g))
                         : v.value(with(own_bundle, g));
      if (val >= threshold) {
        witness = g;
        break;
      }
      additions.push_back({g, std::move(val)});
    }
    if (witness) {
      verdict.certificates.push_back({i, std::nullopt, witness});
      continue;
    }
    verdict.holds = false;
    verdict.certificates.clear();
    verdict.violation = Violation{i, std::nullopt, own, threshold, std::move(additions)};
    return verdict;
  }
  return verdict;
}

FairnessVerdict is_alpha_mms(const Instance& inst, const Allocation& alloc,
                             const Rational& alpha, const MmsProfile& mms) {
  validate_allocation(alloc, inst.n(), inst.m());
  if (mms.mms.size() < inst.n()) throw std::invalid_argument("MMS profile is missing agents");
  FairnessVerdict verdict;
  for (Agent i = 0; i < inst.n(); ++i) {
    const Rational own = inst.valuation(i).value(alloc.bundles[i]);
    const Rational threshold = alpha * mms.mms[i];
    if (own >= threshold) {
      verdict.certificates.push_back({i, std::nullopt, std::nullopt});
      continue;
    }
    verdict.holds = false;
    verdict.certificates.clear();
    verdict.violation = Violation{i, std::nullopt, own, threshold, {}};
    return verdict;
  }
  return verdict;
}

bool witness_confirms(const Instance& inst, const Allocation& alloc, PropertyKind kind,
                      const Violation& w) {
  const auto& v = inst.valuation(w.agent);
  const Bundle& own_bundle = alloc.bundles[w.agent];
  const Rational own = v.value(own_bundle);
  if (own != w.own_value) return false;
  switch (kind) {
    case PropertyKind::ef1: {
      if (!w.other) return false;
      const Bundle& other = alloc.bundles[*w.other];
      if (other.empty() || w.removals.size() != other.size()) return false;
      for (const auto& r : w.removals) {
        if (!std::binary_search(other.begin(), other.end(), r.good)) return false;
        if (v.value(without(other, r.good)) != r.residual) return false;
        if (!(own < r.residual)) return false;
      }
      return true;
    }
    case PropertyKind::prop1: {
      if (!(own < w.threshold)) return false;
      for (const auto& r : w.removals) {
        if (v.value(with(own_bundle, r.good)) != r.residual) return false;
        if (!(r.residual < w.threshold)) return false;
      }
      return true;
    }
    case PropertyKind::alpha_mms:
      return own < w.threshold;
  }
  return false;
}

json verdict_to_json(const FairnessVerdict& v) {
  json out;
  out["holds"] = v.holds;
  if (v.violation) {
    const auto& w = *v.violation;
    json jw;
    jw["agent"] = w.agent + 1;
    if (w.other) jw["other"] = *w.other + 1;
    jw["own_value"] = w.own_value.str();
    jw["threshold"] = w.threshold.str();
    json checks = json::array();
    for (const auto& r : w.removals)
      checks.push_back({{"good", r.good + 1}, {"value", r.residual.str()}});
    jw["checks"] = checks;
    out["witness"] = jw;
  } else {
    json certs = json::array();
    for (const auto& c : v.certificates) {
      json jc;
      jc["agent"] = c.agent + 1;
      if (c.other) jc["other"] = *c.other + 1;
      jc["good"] = c.good ? json(*c.good + 1) : json(nullptr);
      certs.push_back(jc);
    }
    out["certificates"] = certs;
  }
  return out;
}

}  // namespace fairdiv
