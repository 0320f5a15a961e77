#include "fairdiv/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <omp.h>

#include "fairdiv/ef1.hpp"
#include "fairdiv/generators.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/metrics.hpp"
#include "fairdiv/mms.hpp"
#include "fairdiv/traces.hpp"

namespace fairdiv {

namespace {

const std::vector<std::string> kCheckNames = {"sqrt",     "sqrt_fair", "fair_opt",   "abs",
                                              "fairness", "t_bound",   "iterations", "envy_steps"};

template <typename T>
std::vector<T> read_list(const nlohmann::json& j, const char* key) {
  if (!j.is_array()) throw std::invalid_argument(std::string("config field '") + key + "' must be an array");
  std::vector<T> out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned()) throw std::invalid_argument(std::string("config field '") + key + "' must hold nonnegative integers");
    out.push_back(x.get<T>());
  }
  return out;
}

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [k, _] : j.items())
    if (!known.contains(k)) throw std::invalid_argument("unknown key '" + k + "' in " + where);
}

Rational parse_rational_field(const nlohmann::json& j, const std::string& key) {
  if (!j.is_string()) throw std::invalid_argument("config field '" + key + "' must be a \"p/q\" string");
  return Rational::parse(j.get<std::string>());
}

struct NotApplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Job {
  std::string id;
  std::string family;
  std::size_t n, m;
  std::optional<std::uint64_t> seed;
  std::string solver;
  Instance instance;
};

std::vector<Job> expand(const ExperimentConfig& config) {
  std::vector<Job> jobs;
  for (const auto& f : config.families) {
    const bool random = f.family == "random" || f.family == "random-subadditive";
    for (std::size_t n : f.n) {
      std::vector<std::size_t> ms = f.m;
      if (f.m_per_n) ms = {*f.m_per_n * n};
      if (!random) ms = {0};
      for (std::size_t m : ms) {
        const std::vector<std::uint64_t> seeds = random ? f.seeds : std::vector<std::uint64_t>{0};
        for (std::uint64_t seed : seeds) {
          std::optional<Instance> inst;
          std::string id = f.family + "-n" + std::to_string(n);
          if (f.family == "random") {
            inst = generate_random(n, m, parse_distribution(f.distribution), seed);
            id += "-m" + std::to_string(m) + "-" + f.distribution + "-s" + std::to_string(seed);
          } else if (f.family == "random-subadditive") {
            inst = generate_random_subadditive(n, m, seed);
            id += "-m" + std::to_string(m) + "-s" + std::to_string(seed);
          } else {
            inst = generate_adversarial({f.family, n, f.epsilon});
          }
          for (const auto& solver : config.solvers)
            jobs.push_back({id + "-" + solver, f.family, n, inst->m(),
                            random ? std::optional<std::uint64_t>(seed) : std::nullopt, solver, *inst});
        }
      }
    }
  }
  return jobs;
}

BoundCheck at_least(const std::string& name, const Rational& lhs, const Rational& rhs) {
  return {name, lhs >= rhs ? "pass" : "fail", lhs.str(), rhs.str()};
}

// lhs >= opt / (c * sqrt(n)), evaluated as c * lhs * sqrt(n) >= opt.
BoundCheck sqrt_check(const std::string& name, const Rational& lhs, const Rational& opt, long c,
                      std::size_t n) {
  const bool ok = times_sqrt_at_least(Rational(c) * lhs, n, opt);
  return {name, ok ? "pass" : "fail", lhs.str(),
          opt.str() + "/(" + std::to_string(c) + "*sqrt(" + std::to_string(n) + "))"};
}

BoundCheck status_only(const std::string& name, const std::string& status) { return {name, status, "", ""}; }

ExperimentRow run_job(const Job& job, const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const Instance& inst = job.instance;
  const std::size_t n = inst.n(), m = inst.m();
  ExperimentRow row;
  row.id = job.id;
  row.family = job.family;
  row.n = n;
  row.m = m;
  row.seed = job.seed;
  row.solver = job.solver;
  row.total_value = inst.total_value();
  const bool ef1 = job.solver == "ef1";
  const long sqrt_const = ef1 ? 16 : 15;
  std::map<std::string, BoundCheck> checks;

  std::string opt_skip;
  try {
    row.opt = max_welfare(inst, config.limits).welfare;
  } catch (const OracleInfeasible& e) {
    opt_skip = e.what();
  }

  std::optional<MmsProfile> exact;
  auto exact_profile = [&]() -> const MmsProfile& {
    if (!exact) exact = mms_profile(inst, Rational(0), false, config.limits);
    return *exact;
  };

  Allocation output;
  try {
    if (ef1) {
      const auto s = solve_ef1(inst, std::nullopt, config.limits);
      output = s.allocation;
      row.branch = s.branch;
      row.welfare = s.welfare;
      row.abs_welfare = social_welfare(inst, s.abs.allocation);
      row.trace = ef1_trace_to_json(s);
      std::size_t steps = s.abs.envy.steps();
      bool envy_ok = steps <= m * n * n;
      if (s.high) {
        row.iterations = s.high->iterations;
        checks["iterations"] = {"iterations", s.high->iterations <= n * m * m ? "pass" : "fail",
                                std::to_string(s.high->iterations), std::to_string(n * m * m)};
        envy_ok = envy_ok && s.high->envy.steps() <= m * n * n;
        steps = std::max(steps, s.high->envy.steps());
      }
      row.envy_steps = steps;
      checks["envy_steps"] = {"envy_steps", envy_ok ? "pass" : "fail", std::to_string(steps),
                              std::to_string(m * n * n)};
      checks["abs"] = at_least("abs", *row.abs_welfare, row.total_value / Rational(static_cast<long>(2 * n)));
      checks["fairness"] = status_only("fairness", is_ef1(inst, output).holds ? "pass" : "fail");
    } else {
      if (!inst.additive()) throw NotApplicable("half-mms needs additive valuations");
      const MmsProfile* given = nullptr;
      if (config.mms_epsilon.is_zero() && inst.scaled()) given = &exact_profile();
      const auto s = solve_half_mms(inst, config.mms_epsilon, given, config.limits);
      output = s.allocation;
      row.branch = s.branch;
      row.welfare = s.welfare;
      row.abs_welfare = social_welfare(inst, s.abs.allocation);
      row.trace = mms_trace_to_json(s);
      if (s.high) {
        const std::size_t t = s.high->t_size();
        row.t_size = t;
        checks["t_bound"] = {"t_bound", t * t <= 16 * n && s.high->covers_all_agents() ? "pass" : "fail",
                             std::to_string(t), "4*sqrt(" + std::to_string(n) + ")"};
      }
      checks["abs"] = at_least("abs", *row.abs_welfare, row.total_value / Rational(static_cast<long>(3 * n)));
      const Rational alpha = (Rational(1) - config.mms_epsilon) / Rational(2);
      checks["fairness"] =
          status_only("fairness", is_alpha_mms(inst, output, alpha, exact_profile()).holds ? "pass" : "fail");
    }
  } catch (const OracleInfeasible& e) {
    row.status = std::string("skipped: ") + e.what();
  } catch (const NotApplicable& e) {
    row.status = std::string("skipped: ") + e.what();
  }

  if (row.welfare) {
    if (!row.opt)
      checks["sqrt"] = status_only("sqrt", "skipped");
    else if (inst.scaled())
      checks["sqrt"] = sqrt_check("sqrt", *row.welfare, *row.opt, sqrt_const, n);

    if (config.fair_opt && allocation_count(n, m) <= config.limits.enumeration_cap) {
      try {
        const FairnessProperty prop =
            ef1 ? FairnessProperty::ef1()
                : FairnessProperty::alpha_mms((Rational(1) - config.mms_epsilon) / Rational(2));
        const auto c = constrained_opt(inst, prop, config.limits, ef1 ? nullptr : &exact_profile());
        if (c.allocation) {
          row.fair_opt = c.welfare;
          row.mode = "exact";
          checks["fair_opt"] = at_least("fair_opt", *row.fair_opt, *row.welfare);
          if (row.opt && inst.scaled())
            checks["sqrt_fair"] = sqrt_check("sqrt_fair", *row.fair_opt, *row.opt, sqrt_const, n);
        } else {
          checks["fair_opt"] = status_only("fair_opt", "fail");
        }
      } catch (const OracleInfeasible&) {
        checks["fair_opt"] = status_only("fair_opt", "skipped");
      }
    } else {
      checks["fair_opt"] = status_only("fair_opt", "skipped");
    }
  }
  if (!opt_skip.empty() && row.status == "ok") row.status = "ok; OPT skipped: " + opt_skip;

  for (const auto& name : kCheckNames) {
    auto it = checks.find(name);
    if (it != checks.end())
      row.checks.push_back(it->second);
    else
      row.checks.push_back(status_only(name, row.status.starts_with("skipped") ? "skipped" : "n/a"));
  }
  if (config.traces) row.trace_path = "traces/" + row.id + ".json";
  row.trace["instance"] = instance_to_json(inst);
  row.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::string opt_cell(const std::optional<Rational>& r) { return r ? r->str() : ""; }

std::string ratio_cell(const std::optional<Rational>& num, const std::optional<Rational>& den) {
  if (!num || !den) return "";
  if (den->is_zero()) return num->is_zero() ? "1" : "inf";
  return (*num / *den).str();
}

std::string decimal_cell(const std::optional<Rational>& num, const std::optional<Rational>& den) {
  if (!num || !den) return "";
  if (den->is_zero()) return num->is_zero() ? "1" : "inf";
  return (*num / *den).decimal(6);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("experiment config must be a JSON object");
  reject_unknown(j, {"families", "solvers", "fair_opt", "mms_epsilon", "caps", "traces", "threads"}, "config");
  if (!j.contains("families")) throw std::invalid_argument("experiment config needs a 'families' list");
  ExperimentConfig c;
  if (!j["families"].is_array()) throw std::invalid_argument("'families' must be an array");
  for (const auto& fj : j["families"]) {
    reject_unknown(fj, {"family", "n", "m", "m_per_n", "seeds", "distribution", "epsilon"}, "family entry");
    FamilyConfig f;
    if (!fj.contains("family") || !fj["family"].is_string())
      throw std::invalid_argument("family entry needs a 'family' name");
    f.family = fj["family"];
    const auto& names = adversarial_families();
    const bool random = f.family == "random" || f.family == "random-subadditive";
    if (!random && std::find(names.begin(), names.end(), f.family) == names.end())
      throw std::invalid_argument("unknown family '" + f.family + "'");
    if (!fj.contains("n")) throw std::invalid_argument("family entry needs an 'n' list");
    f.n = read_list<std::size_t>(fj["n"], "n");
    if (fj.contains("m")) f.m = read_list<std::size_t>(fj["m"], "m");
    if (fj.contains("m_per_n")) f.m_per_n = fj["m_per_n"].get<std::size_t>();
    if (fj.contains("seeds")) f.seeds = read_list<std::uint64_t>(fj["seeds"], "seeds");
    if (fj.contains("distribution")) {
      f.distribution = fj["distribution"];
      parse_distribution(f.distribution);
    }
    if (fj.contains("epsilon")) f.epsilon = parse_rational_field(fj["epsilon"], "epsilon");
    if (random && f.m.empty() && !f.m_per_n)
      throw std::invalid_argument("random family '" + f.family + "' needs 'm' or 'm_per_n'");
    c.families.push_back(std::move(f));
  }
  if (j.contains("solvers")) {
    c.solvers.clear();
    for (const auto& s : j["solvers"]) {
      const std::string name = s.get<std::string>();
      if (name != "ef1" && name != "half-mms") throw std::invalid_argument("unknown solver '" + name + "'");
      c.solvers.push_back(name);
    }
  }
  if (j.contains("fair_opt")) c.fair_opt = j["fair_opt"].get<bool>();
  if (j.contains("mms_epsilon")) {
    c.mms_epsilon = parse_rational_field(j["mms_epsilon"], "mms_epsilon");
    if (c.mms_epsilon.is_negative() || c.mms_epsilon >= Rational(1))
      throw std::invalid_argument("mms_epsilon must lie in [0, 1)");
  }
  if (j.contains("caps")) {
    const auto& cj = j["caps"];
    reject_unknown(cj, {"enumeration", "mms_nodes", "explicit_mms"}, "caps");
    if (cj.contains("enumeration")) c.limits.enumeration_cap = cj["enumeration"].get<std::uint64_t>();
    if (cj.contains("mms_nodes")) c.limits.mms_node_budget = cj["mms_nodes"].get<std::uint64_t>();
    if (cj.contains("explicit_mms")) c.limits.explicit_mms_cap = cj["explicit_mms"].get<std::uint64_t>();
  }
  if (j.contains("traces")) c.traces = j["traces"].get<bool>();
  if (j.contains("threads")) c.threads = j["threads"].get<int>();
  return c;
}

std::optional<Rational> ExperimentRow::ratio() const {
  if (!opt || !welfare || welfare->is_zero()) return std::nullopt;
  return *opt / *welfare;
}

std::optional<Rational> ExperimentRow::fair_ratio() const {
  if (!opt || !fair_opt || fair_opt->is_zero()) return std::nullopt;
  return *opt / *fair_opt;
}

const BoundCheck* ExperimentRow::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const std::vector<Job> jobs = expand(config);
  std::vector<std::optional<ExperimentRow>> rows(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    try {
      rows[k] = run_job(jobs[k], config);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }

  ExperimentReport report;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
    for (const auto& c : rows[k]->checks)
      if (c.status == "fail") {
        nlohmann::json payload = row_to_json(*rows[k]);
        payload["trace"] = rows[k]->trace;
        throw ExperimentFailure("row " + rows[k]->id + " failed check '" + c.name + "' (" + c.lhs +
                                    " vs " + c.rhs + ")",
                                payload);
      }
    report.rows.push_back(std::move(*rows[k]));
  }
  return report;
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "id,family,n,m,seed,solver,status,branch,opt,welfare,ratio,ratio_decimal,fair_opt,fair_ratio,"
        "fair_ratio_decimal,mode,total_value,abs_welfare,iterations,envy_steps,t_size";
  for (const auto& name : kCheckNames) os << ",check_" << name;
  os << ",trace\n";
  auto num = [](const auto& x) { return x ? std::to_string(*x) : std::string(); };
  for (const auto& r : report.rows) {
    os << csv_escape(r.id) << ',' << r.family << ',' << r.n << ',' << r.m << ',' << num(r.seed) << ','
       << r.solver << ',' << csv_escape(r.status) << ',' << r.branch << ',' << opt_cell(r.opt) << ','
       << opt_cell(r.welfare) << ',' << ratio_cell(r.opt, r.welfare) << ','
       << decimal_cell(r.opt, r.welfare) << ',' << opt_cell(r.fair_opt) << ','
       << ratio_cell(r.opt, r.fair_opt) << ',' << decimal_cell(r.opt, r.fair_opt) << ',' << r.mode << ','
       << r.total_value.str() << ',' << opt_cell(r.abs_welfare) << ',' << num(r.iterations) << ','
       << num(r.envy_steps) << ',' << num(r.t_size);
    for (const auto& c : r.checks) os << ',' << c.status;
    os << ',' << r.trace_path << '\n';
  }
  return os.str();
}

nlohmann::json row_to_json(const ExperimentRow& r) {
  auto opt_json = [](const std::optional<Rational>& x) -> nlohmann::json {
    return x ? nlohmann::json(x->str()) : nlohmann::json(nullptr);
  };
  nlohmann::json j = {{"id", r.id},
                      {"family", r.family},
                      {"n", r.n},
                      {"m", r.m},
                      {"seed", r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr)},
                      {"solver", r.solver},
                      {"status", r.status},
                      {"branch", r.branch},
                      {"opt", opt_json(r.opt)},
                      {"welfare", opt_json(r.welfare)},
                      {"ratio", ratio_cell(r.opt, r.welfare)},
                      {"ratio_decimal", decimal_cell(r.opt, r.welfare)},
                      {"fair_opt", opt_json(r.fair_opt)},
                      {"fair_ratio", ratio_cell(r.opt, r.fair_opt)},
                      {"mode", r.mode},
                      {"total_value", r.total_value.str()},
                      {"abs_welfare", opt_json(r.abs_welfare)},
                      {"runtime_ms", r.runtime_ms},
                      {"trace_path", r.trace_path}};
  auto num = [](const auto& x) { return x ? nlohmann::json(*x) : nlohmann::json(nullptr); };
  j["iterations"] = num(r.iterations);
  j["envy_steps"] = num(r.envy_steps);
  j["t_size"] = num(r.t_size);
  auto checks = nlohmann::json::object();
  for (const auto& c : r.checks) checks[c.name] = {{"status", c.status}, {"lhs", c.lhs}, {"rhs", c.rhs}};
  j["checks"] = checks;
  return j;
}

nlohmann::json report_json(const ExperimentReport& report) {
  auto rows = nlohmann::json::array();
  for (const auto& r : report.rows) rows.push_back(row_to_json(r));
  return {{"rows", rows}};
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir, bool traces) {
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "results.csv") << report_csv(report);
  write_json_file(report_json(report), dir / "results.json");
  if (!traces) return;
  std::filesystem::create_directories(dir / "traces");
  for (const auto& r : report.rows) write_json_file(r.trace, dir / r.trace_path);
}

}  // namespace fairdiv
