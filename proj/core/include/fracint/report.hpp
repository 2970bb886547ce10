#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracint/corpus.hpp"
#include "fracint/inequalities.hpp"
#include "fracint/types.hpp"

namespace fracint {

inline constexpr const char* kVersion = "0.1.0";

enum class SuiteId { hh2, bounds2, identity2, hh3, fejer3, identities3, limits };

const char* suite_name(SuiteId s);

enum class ReportFormat { csv, json };

struct RunConfig {
  std::vector<double> alpha_grid;
  std::vector<double> rho_grid;
  std::vector<Interval> intervals;
  CorpusSpec corpus;  // corpus.interval is ignored; intervals drive generation
  double tol = 1e-10;
  std::vector<SuiteId> suites;
  std::string output_path = "report.csv";
  ReportFormat format = ReportFormat::csv;
  int jobs = 0;          // 0 = hardware concurrency
  int limits_k_max = 14;

  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the JSON run configuration; throws ConfigError on any problem.
RunConfig parse_config(const std::string& json_text);

/// The acceptance sweep configuration: alpha in {0.25, 0.5, 0.75, 1, 1.5, 2, 3},
/// rho in {0.1, 0.5, 1, 2, 5}, intervals [0,1] and [1,2], all suites, all
/// families with 3 members each.
RunConfig default_config();

std::string config_to_json(const RunConfig& config);

struct ReportRow {
  std::string suite;
  std::string theorem;  // statement label of the inequality catalog
  std::string function_id;
  std::string weight_id;  // empty for unweighted rows
  double alpha = 0.0;
  double rho = 0.0;  // 0 for rows that sweep rho internally (limit studies)
  double a = 0.0;
  double b = 0.0;
  // Unused slots hold NaN and serialize as empty/null.
  double lhs, mid, rhs, quantity, bound, residual, margin_left, margin_right, slack;
  std::string outcome;  // pass | fail | skip
  double quad_error = 0.0;

  ReportRow();
};

struct Report {
  std::string version;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<double> alpha_grid;
  std::vector<double> rho_grid;
  std::vector<Interval> intervals;
  ConstantVariant constant_variant = ConstantVariant::without_alpha;
  std::vector<ReportRow> rows;
  long pass_count = 0;
  long fail_count = 0;
  long skip_count = 0;

  std::string summary() const;
};

/// Runs the selected suites over corpus x grids. Cells execute on a worker
/// pool but are collected in enumeration order, so the report is
/// byte-identical across runs and thread counts.
Report run_verification(const RunConfig& config);

std::string report_to_csv(const Report& report);
std::string report_to_json(const Report& report);

/// Serializes per config.format and writes config.output_path.
void write_report(const Report& report, const RunConfig& config);

}  // namespace fracint
