#include "fairdiv/envy_cycle.hpp"

#include <algorithm>

namespace fairdiv {

namespace {

class EnvyGraph {
 public:
  EnvyGraph(const Instance& inst, Allocation& alloc) : inst_(inst), alloc_(alloc) {
    const std::size_t n = inst.n();
    val_.assign(n, std::vector<Rational>(n));
    for (Agent j = 0; j < n; ++j) refresh_column(j);
  }

  // val_[i][j] = v_i(A_j).
  void refresh_column(Agent j) {
    for (Agent i = 0; i < inst_.n(); ++i) val_[i][j] = inst_.valuation(i).value(alloc_.bundles[j]);
  }

  [[nodiscard]] bool envies(Agent i, Agent j) const { return i != j && val_[i][i] < val_[i][j]; }

  [[nodiscard]] std::optional<Agent> lowest_source() const {
    for (Agent j = 0; j < inst_.n(); ++j) {
      bool envied = false;
      for (Agent i = 0; i < inst_.n() && !envied; ++i) envied = envies(i, j);
      if (!envied) return j;
    }
    return std::nullopt;
  }

  // Every agent is envied, so walking backwards along envy edges from agent
  // 0 (always to the lowest-index envier) must close a cycle.
  void rotate_cycle() {
    const std::size_t n = inst_.n();
    std::vector<std::size_t> seen_at(n, n);
    std::vector<Agent> walk;
    Agent cur = 0;
    while (seen_at[cur] == n) {
      seen_at[cur] = walk.size();
      walk.push_back(cur);
      Agent pred = 0;
      while (!envies(pred, cur)) ++pred;
      cur = pred;
    }
    // walk[k+1] envies walk[k] along the cycle starting at seen_at[cur].
    const std::vector<Agent> cycle(walk.begin() + static_cast<long>(seen_at[cur]), walk.end());
    std::vector<Bundle> old;
    for (Agent a : cycle) old.push_back(alloc_.bundles[a]);
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const Agent envier = cycle[(k + 1) % cycle.size()];
      alloc_.bundles[envier] = old[k];
    }
    for (Agent a : cycle) refresh_column(a);
  }

  void add(Agent j, Good g) {
    auto& b = alloc_.bundles[j];
    b.insert(std::upper_bound(b.begin(), b.end(), g), g);
    refresh_column(j);
  }

  [[nodiscard]] const Rational& own(Agent i) const { return val_[i][i]; }

 private:
  const Instance& inst_;
  Allocation& alloc_;
  std::vector<std::vector<Rational>> val_;
};

void check_step(const Instance& inst, const Allocation& alloc, const std::vector<Rational>& before,
                const EnvyGraph& graph) {
  auto verdict = is_ef1(inst, alloc);
  if (!verdict.holds) throw std::logic_error("envy-cycle step produced a non-EF1 allocation");
  for (Agent i = 0; i < inst.n(); ++i)
    if (graph.own(i) < before[i]) throw std::logic_error("envy-cycle step lowered an agent's value");
}

}  // namespace

Allocation extend_ef1(const Instance& inst, const Allocation& partial,
                      const EnvyCycleOptions& options, EnvyCycleStats* stats) {
  auto verdict = is_ef1(inst, partial);
  if (!verdict.holds) {
    const auto& w = *verdict.violation;
    throw NotEf1("partial allocation is not EF1: agent " + std::to_string(w.agent + 1) +
                     " envies agent " + std::to_string(*w.other + 1) + " beyond one good",
                 w);
  }
  EnvyCycleStats local;
  EnvyCycleStats& st = stats ? *stats : local;
  Allocation alloc = partial;
  EnvyGraph graph(inst, alloc);
  std::vector<Rational> before(inst.n());
  auto snapshot = [&] {
    for (Agent i = 0; i < inst.n(); ++i) before[i] = graph.own(i);
  };

  for (Good g : partial.unallocated(inst.m())) {
    std::optional<Agent> source;
    while (!(source = graph.lowest_source())) {
      if (options.check_invariants) snapshot();
      graph.rotate_cycle();
      ++st.rotations;
      if (options.check_invariants) check_step(inst, alloc, before, graph);
    }
    if (options.check_invariants) snapshot();
    graph.add(*source, g);
    ++st.additions;
    if (options.check_invariants) check_step(inst, alloc, before, graph);
  }
  return alloc;
}

}  // namespace fairdiv
