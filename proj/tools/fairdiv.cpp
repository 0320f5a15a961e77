#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "fairdiv/ef1.hpp"
#include "fairdiv/experiment.hpp"
#include "fairdiv/generators.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/metrics.hpp"
#include "fairdiv/mms.hpp"
#include "fairdiv/traces.hpp"

using namespace fairdiv;

namespace {

struct Usage : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void emit(const nlohmann::json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  write_json_file(j, out);
}

Rational rational_arg(const std::string& text, const char* flag) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument&) {
    throw Usage(std::string(flag) + " expects p/q, got '" + text + "'");
  }
}

struct GenArgs {
  std::string family;
  std::size_t n = 0;
  std::optional<std::size_t> m;
  std::uint64_t seed = 0;
  std::string distribution = "uniform-rational";
  std::optional<std::string> epsilon;
  std::string out;
};

int run_gen(const GenArgs& a) {
  std::optional<Instance> inst;
  if (a.family == "random" || a.family == "random-subadditive") {
    if (!a.m) throw Usage("--m is required for random families");
    inst = a.family == "random" ? generate_random(a.n, *a.m, parse_distribution(a.distribution), a.seed)
                                : generate_random_subadditive(a.n, *a.m, a.seed);
  } else {
    std::optional<Rational> eps;
    if (a.epsilon) eps = rational_arg(*a.epsilon, "--epsilon");
    inst = generate_adversarial({a.family, a.n, eps});
  }
  emit(instance_to_json(*inst), a.out);
  return 0;
}

struct CheckArgs {
  std::string property;
  std::string alpha = "1";
  std::string instance;
  std::string allocation;
};

int run_check(const CheckArgs& a) {
  const Instance inst = load_instance(a.instance);
  const Allocation alloc = load_allocation(a.allocation, inst.n(), inst.m());
  FairnessVerdict v;
  if (a.property == "ef1") {
    v = is_ef1(inst, alloc);
  } else if (a.property == "prop1") {
    v = is_prop1(inst, alloc);
  } else {
    const MmsProfile profile = mms_profile(inst);
    v = is_alpha_mms(inst, alloc, rational_arg(a.alpha, "--alpha"), profile);
  }
  nlohmann::json j = verdict_to_json(v);
  j["property"] = a.property;
  if (a.property == "mms") j["alpha"] = rational_arg(a.alpha, "--alpha").str();
  std::cout << j.dump(2) << '\n';
  return v.holds ? 0 : 1;
}

int run_mms(const std::string& instance, const std::string& epsilon) {
  const Instance inst = load_instance(instance);
  const Rational eps = rational_arg(epsilon, "--epsilon");
  std::cout << profile_to_json(mms_profile(inst, eps, true)).dump(2) << '\n';
  return 0;
}

int run_pof(const std::string& instance, const std::string& property, const std::string& alpha) {
  const Instance inst = load_instance(instance);
  FairnessProperty prop = FairnessProperty::ef1();
  if (property == "prop1") prop = FairnessProperty::prop1();
  if (property == "mms") prop = FairnessProperty::alpha_mms(rational_arg(alpha, "--alpha"));
  const auto p = price_of_fairness(inst, prop);
  nlohmann::json j = {{"property", property}, {"opt", p.opt.str()}, {"fair_opt", p.fair_opt.str()}};
  j["ratio"] = p.ratio ? nlohmann::json(p.ratio->str()) : nlohmann::json(nullptr);
  j["ratio_decimal"] = p.ratio ? nlohmann::json(p.ratio->decimal(6)) : nlohmann::json(nullptr);
  j["fair_allocation"] = p.fair_allocation ? allocation_to_json(*p.fair_allocation) : nlohmann::json(nullptr);
  if (property == "mms") j["alpha"] = prop.alpha.str();
  std::cout << j.dump(2) << '\n';
  return 0;
}

struct SolveArgs {
  std::string alg;
  std::string instance;
  std::optional<std::string> reference;
  std::string epsilon = "0";
  bool trace = false;
  bool rescale = false;
  std::string out;
};

int run_solve(const SolveArgs& a) {
  Instance inst = load_instance(a.instance);
  if (a.rescale) {
    if (!inst.additive()) throw Usage("--rescale needs an additive instance");
    inst = inst.rescaled();
  }
  nlohmann::json summary = {{"alg", a.alg}};
  Allocation alloc;
  if (a.alg == "ef1") {
    std::optional<Allocation> ref;
    if (a.reference) ref = load_allocation(*a.reference, inst.n(), inst.m());
    const auto s = solve_ef1(inst, ref);
    alloc = s.allocation;
    summary["branch"] = s.branch;
    summary["welfare"] = s.welfare.str();
    if (a.trace) summary["trace"] = ef1_trace_to_json(s);
  } else {
    if (a.reference) throw Usage("--reference applies to --alg ef1 only");
    const auto s = solve_half_mms(inst, rational_arg(a.epsilon, "--epsilon"));
    alloc = s.allocation;
    summary["branch"] = s.branch;
    summary["welfare"] = s.welfare.str();
    if (a.trace) summary["trace"] = mms_trace_to_json(s);
  }
  summary["allocation"] = allocation_to_json(alloc);
  if (!a.out.empty()) save_allocation(alloc, a.out);
  std::cout << summary.dump(2) << '\n';
  return 0;
}

int run_experiment_cmd(const std::string& config_path, const std::string& out_dir) {
  const ExperimentConfig config = parse_experiment_config(read_json_file(config_path));
  try {
    const ExperimentReport report = run_experiment(config);
    write_report(report, out_dir, config.traces);
    std::cout << report.rows.size() << " rows written to " << out_dir << '\n';
    return 0;
  } catch (const ExperimentFailure& e) {
    std::filesystem::create_directories(out_dir);
    write_json_file(e.row, std::filesystem::path(out_dir) / "failure.json");
    std::cerr << "fairdiv: bound violated: " << e.what() << '\n' << e.row.dump(2) << '\n';
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact fair-division solvers, oracles and experiments"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
  gen_cmd->add_option("--family", gen.family, "Adversarial family, random or random-subadditive")->required();
  gen_cmd->add_option("--n", gen.n, "Number of agents")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--m", gen.m, "Number of goods (random families)");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--distribution", gen.distribution, "uniform-rational or dirichlet-scaled");
  gen_cmd->add_option("--epsilon", gen.epsilon, "Family parameter p/q");
  gen_cmd->add_option("-o,--output", gen.out, "Output file (stdout by default)");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Check a fairness property; exit 0 if it holds, 1 if not");
  check_cmd->add_option("--property", check.property)->required()->check(CLI::IsMember({"ef1", "prop1", "mms"}));
  check_cmd->add_option("--alpha", check.alpha, "Approximation factor for mms");
  check_cmd->add_option("--instance", check.instance)->required();
  check_cmd->add_option("--allocation", check.allocation)->required();

  std::string mms_instance, mms_epsilon = "0";
  auto* mms_cmd = app.add_subcommand("mms", "Exact maximin-share profile");
  mms_cmd->add_option("--instance", mms_instance)->required();
  mms_cmd->add_option("--epsilon", mms_epsilon, "Estimates become (1 - epsilon) * MMS");

  std::string pof_instance, pof_property = "ef1", pof_alpha = "1/2";
  auto* pof_cmd = app.add_subcommand("pof", "Price of fairness by exhaustive search");
  pof_cmd->add_option("--instance", pof_instance)->required();
  pof_cmd->add_option("--property", pof_property)->check(CLI::IsMember({"ef1", "prop1", "mms"}));
  pof_cmd->add_option("--alpha", pof_alpha, "Approximation factor for mms");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run a best-of-two solver");
  solve_cmd->add_option("--alg", solve.alg)->required()->check(CLI::IsMember({"ef1", "half-mms"}));
  solve_cmd->add_option("--instance", solve.instance)->required();
  solve_cmd->add_option("--reference", solve.reference, "Reference allocation for the high-welfare EF1 branch");
  solve_cmd->add_option("--epsilon", solve.epsilon, "MMS estimate slack p/q");
  solve_cmd->add_flag("--trace", solve.trace, "Include the algorithm trace");
  solve_cmd->add_flag("--rescale", solve.rescale, "Rescale an additive instance to v_i([m]) = 1 first");
  solve_cmd->add_option("-o,--output", solve.out, "Allocation output file");

  std::string exp_config, exp_out;
  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment sweep");
  exp_cmd->add_option("--config", exp_config)->required();
  exp_cmd->add_option("-o,--output", exp_out, "Report directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*check_cmd) return run_check(check);
    if (*mms_cmd) return run_mms(mms_instance, mms_epsilon);
    if (*pof_cmd) return run_pof(pof_instance, pof_property, pof_alpha);
    if (*solve_cmd) return run_solve(solve);
    if (*exp_cmd) return run_experiment_cmd(exp_config, exp_out);
  } catch (const std::exception& e) {
    std::cerr << "fairdiv: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
