#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairdiv/oracles.hpp"

namespace fairdiv {

/// One entry of the "families" list. Adversarial families use `n` only;
/// "random" and "random-subadditive" cross `n` with `m` (or m = m_per_n * n)
/// and `seeds`.
struct FamilyConfig {
  std::string family;
  std::vector<std::size_t> n;
  std::vector<std::size_t> m;
  std::optional<std::size_t> m_per_n;
  std::vector<std::uint64_t> seeds{0};
  std::string distribution = "uniform-rational";
  std::optional<Rational> epsilon;
};

struct ExperimentConfig {
  std::vector<FamilyConfig> families;
  /// "ef1" and/or "half-mms".
  std::vector<std::string> solvers{"ef1", "half-mms"};
  /// Compute the constrained optimum where n^m fits the enumeration cap.
  bool fair_opt = true;
  Rational mms_epsilon;
  OracleLimits limits;
  bool traces = false;
  /// Row-level OpenMP fan-out; 0 keeps the runtime default.
  int threads = 0;
};

/// Parses the JSON config (schema in the README). Throws std::invalid_argument.
ExperimentConfig parse_experiment_config(const nlohmann::json& j);

/// "pass", "fail", "n/a" or "skipped".
struct BoundCheck {
  std::string name;
  std::string status;
  /// Exact sides of the inequality lhs >= rhs (empty unless evaluated).
  std::string lhs;
  std::string rhs;
};

struct ExperimentRow {
  std::string id;
  std::string family;
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<std::uint64_t> seed;
  std::string solver;
  /// "ok" or "skipped: <reason>".
  std::string status = "ok";
  std::string branch;
  std::optional<Rational> opt;
  std::optional<Rational> welfare;
  std::optional<Rational> abs_welfare;
  Rational total_value;
  /// Constrained optimum for the solver's property; empty when skipped.
  std::optional<Rational> fair_opt;
  /// "exact" when fair_opt was enumerated, "theorem-only" otherwise.
  std::string mode = "theorem-only";
  std::optional<std::size_t> iterations;
  std::optional<std::size_t> envy_steps;
  std::optional<std::size_t> t_size;
  std::vector<BoundCheck> checks;
  double runtime_ms = 0;
  std::string trace_path;
  nlohmann::json trace;

  [[nodiscard]] std::optional<Rational> ratio() const;
  [[nodiscard]] std::optional<Rational> fair_ratio() const;
  [[nodiscard]] const BoundCheck* check(const std::string& name) const;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
};

/// Raised when a proven inequality fails on some row; carries the row and
/// its full solver trace.
class ExperimentFailure : public std::runtime_error {
 public:
  ExperimentFailure(const std::string& what, nlohmann::json row)
      : std::runtime_error(what), row(std::move(row)) {}
  nlohmann::json row;
};

/// Rows run in parallel and are assembled in config order.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Deterministic CSV (no runtime column).
std::string report_csv(const ExperimentReport& report);
nlohmann::json report_json(const ExperimentReport& report);
nlohmann::json row_to_json(const ExperimentRow& row);

/// Writes results.csv, results.json and, when traces are on, traces/<id>.json.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir, bool traces);

}  // namespace fairdiv
