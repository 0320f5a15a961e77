#include "fairdiv/traces.hpp"

#include "fairdiv/io.hpp"

namespace fairdiv {

namespace {

nlohmann::json goods_json(const std::vector<Good>& goods) {
  auto out = nlohmann::json::array();
  for (Good g : goods) out.push_back(g + 1);
  return out;
}

nlohmann::json envy_json(const EnvyCycleStats& s) {
  return {{"rotations", s.rotations}, {"additions", s.additions}, {"steps", s.steps()}};
}

}  // namespace

const char* mms_class_name(MmsClass c) {
  switch (c) {
    case MmsClass::mms: return "mms";
    case MmsClass::single: return "single";
    case MmsClass::hard: return "hard";
  }
  return "?";
}

nlohmann::json ef1_trace_to_json(const Ef1Solution& s) {
  nlohmann::json j;
  j["branch"] = s.branch;
  j["abs"] = {{"matched", allocation_to_json(s.abs.matched)},
              {"allocation", allocation_to_json(s.abs.allocation)},
              {"envy_cycle", envy_json(s.abs.envy)}};
  if (s.high) {
    auto steps = nlohmann::json::array();
    for (const auto& st : s.high->trace)
      steps.push_back({{"t", st.t}, {"k", st.k + 1}, {"a", st.a + 1}, {"c", st.c + 1}});
    j["high"] = {{"line", goods_json(s.high->line)},
                 {"steps", steps},
                 {"iterations", s.high->iterations},
                 {"partial", allocation_to_json(s.high->partial)},
                 {"allocation", allocation_to_json(s.high->allocation)},
                 {"envy_cycle", envy_json(s.high->envy)}};
  }
  return j;
}

nlohmann::json mms_trace_to_json(const MmsSolution& s) {
  nlohmann::json j;
  j["branch"] = s.branch;
  auto picks = nlohmann::json::array();
  for (const auto& p : s.abs.picks)
    picks.push_back({{"agent", p.agent + 1}, {"good", p.good + 1}, {"active", p.active}});
  auto rr = nlohmann::json::array();
  for (Agent i : s.abs.prop1_agents) rr.push_back(i + 1);
  j["abs"] = {{"picks", picks},
              {"round_robin_agents", rr},
              {"leftover", goods_json(s.abs.leftover)},
              {"allocation", allocation_to_json(s.abs.allocation)}};
  if (s.profile) j["profile"] = profile_to_json(*s.profile);
  if (s.high) {
    auto classes = nlohmann::json::array();
    for (auto c : s.high->classes) classes.push_back(mms_class_name(c));
    auto events = nlohmann::json::array();
    for (const auto& e : s.high->trace)
      events.push_back({{"step", e.step},
                        {"t", e.t},
                        {"agent", e.agent + 1},
                        {"bundle", goods_json(e.bundle)},
                        {"membership", e.membership}});
    auto p = nlohmann::json::array(), t = nlohmann::json::array();
    for (Agent i = 0; i < s.high->in_p.size(); ++i) {
      if (s.high->in_p[i]) p.push_back(i + 1);
      if (s.high->in_t[i]) t.push_back(i + 1);
    }
    j["high"] = {{"line", goods_json(s.high->line)},
                 {"classes", classes},
                 {"events", events},
                 {"P", p},
                 {"T", t},
                 {"allocation", allocation_to_json(s.high->allocation)}};
  }
  return j;
}

}  // namespace fairdiv
