#include "fracint/report.hpp"

#include <atomic>
#include <functional>
#include <mutex>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>

#include <json.hpp>

#include "fracint/limits.hpp"

namespace fracint {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_or_empty(double v) { return std::isnan(v) ? std::string() : fmt(v); }

std::string fmt_or_null(double v) { return std::isnan(v) ? "null" : fmt(v); }

std::string join_grid(const std::vector<double>& grid) {
  std::string out;
  for (double g : grid) {
    if (!out.empty()) out += ",";
    out += fmt(g);
  }
  return out;
}

Family family_from_name(const std::string& name) {
  for (Family f : all_families()) {
    if (name == family_name(f)) return f;
  }
  throw ConfigError("unknown corpus family: " + name);
}

SuiteId suite_from_name(const std::string& name) {
  static const SuiteId all[] = {SuiteId::hh2,    SuiteId::bounds2,    SuiteId::identity2,
                                SuiteId::hh3,    SuiteId::fejer3,     SuiteId::identities3,
                                SuiteId::limits};
  for (SuiteId s : all) {
    if (name == suite_name(s)) return s;
  }
  throw ConfigError("unknown suite id: " + name);
}

std::string outcome_of(bool pass, bool skipped) {
  if (skipped) return "skip";
  return pass ? "pass" : "fail";
}

ReportRow base_row(SuiteId suite, const char* theorem, const std::string& fn_id,
                   double alpha, double rho, const Interval& iv) {
  ReportRow row;
  row.suite = suite_name(suite);
  row.theorem = theorem;
  row.function_id = fn_id;
  row.alpha = alpha;
  row.rho = rho;
  row.a = iv.a;
  row.b = iv.b;
  return row;
}

void fill_verdict(ReportRow& row, const InequalityVerdict& v) {
  row.lhs = v.lhs;
  row.mid = v.mid;
  row.rhs = v.rhs;
  row.margin_left = v.margin_left;
  row.margin_right = v.margin_right;
  row.quad_error = v.quad_error;
  row.outcome = outcome_of(v.pass, v.skipped);
}

void fill_residual(ReportRow& row, const IdentityResidual& r) {
  row.lhs = r.left_side;
  row.rhs = r.right_side;
  row.residual = r.residual;
  row.quad_error = r.quad_error;
  row.outcome = outcome_of(r.pass, r.skipped);
}

void fill_bound(ReportRow& row, const BoundVerdict& b) {
  row.quantity = b.quantity;
  row.bound = b.bound;
  row.slack = b.slack;
  row.quad_error = b.quad_error;
  row.outcome = outcome_of(b.pass, b.skipped);
}

bool has_deriv_certs(const TestFunction& f) {
  return f.has_deriv1() && f.certificates.has(Certificate::abs_deriv_convex);
}

bool has_second_deriv(const TestFunction& f) {
  return f.has_deriv2() && f.certificates.has(Certificate::second_deriv_bounded);
}

Interval power_hull(const Interval& iv, const std::vector<double>& rho_grid) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double rho : rho_grid) {
    lo = std::min(lo, std::pow(iv.a, rho));
    hi = std::max(hi, std::pow(iv.b, rho));
  }
  return Interval(lo, hi);
}

}  // namespace

const char* suite_name(SuiteId s) {
  switch (s) {
    case SuiteId::hh2: return "hh2";
    case SuiteId::bounds2: return "bounds2";
    case SuiteId::identity2: return "identity2";
    case SuiteId::hh3: return "hh3";
    case SuiteId::fejer3: return "fejer3";
    case SuiteId::identities3: return "identities3";
    case SuiteId::limits: return "limits";
  }
  return "?";
}

ReportRow::ReportRow()
    : lhs(kNaN),
      mid(kNaN),
      rhs(kNaN),
      quantity(kNaN),
      bound(kNaN),
      residual(kNaN),
      margin_left(kNaN),
      margin_right(kNaN),
      slack(kNaN) {}

void RunConfig::validate() const {
  if (alpha_grid.empty()) throw ConfigError("alpha_grid must be nonempty");
  if (rho_grid.empty()) throw ConfigError("rho_grid must be nonempty");
  if (intervals.empty()) throw ConfigError("intervals must be nonempty");
  for (double a : alpha_grid) {
    if (!(a > 0.0)) throw ConfigError("alpha_grid entries must be > 0");
  }
  for (double r : rho_grid) {
    if (!(r > 0.0)) throw ConfigError("rho_grid entries must be > 0");
  }
  if (!(tol >= 1e-14 && tol <= 1e-2)) throw ConfigError("tol must lie in [1e-14, 1e-2]");
  if (suites.empty()) throw ConfigError("suites must be nonempty");
  if (corpus.count_per_family < 1) throw ConfigError("count_per_family must be >= 1");
  if (corpus.families.empty()) throw ConfigError("corpus families must be nonempty");
  if (limits_k_max < 1 || limits_k_max > 24) throw ConfigError("limits_k_max out of range");
}

RunConfig default_config() {
  RunConfig cfg;
  cfg.alpha_grid = {0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
  cfg.rho_grid = {0.1, 0.5, 1.0, 2.0, 5.0};
  cfg.intervals = {Interval(0.0, 1.0), Interval(1.0, 2.0)};
  cfg.corpus.families = all_families();
  cfg.corpus.count_per_family = 3;
  cfg.corpus.seed = 42;
  cfg.tol = 1e-10;
  cfg.suites = {SuiteId::hh2,    SuiteId::bounds2,     SuiteId::identity2, SuiteId::hh3,
                SuiteId::fejer3, SuiteId::identities3, SuiteId::limits};
  return cfg;
}

RunConfig parse_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  try {
    cfg.alpha_grid = j.at("alpha_grid").get<std::vector<double>>();
    cfg.rho_grid = j.at("rho_grid").get<std::vector<double>>();
    cfg.intervals.clear();
    for (const auto& pair : j.at("intervals")) {
      cfg.intervals.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
    const auto& corpus = j.at("corpus");
    cfg.corpus.families.clear();
    for (const auto& name : corpus.at("families")) {
      cfg.corpus.families.push_back(family_from_name(name.get<std::string>()));
    }
    cfg.corpus.count_per_family = corpus.at("count_per_family").get<int>();
    cfg.corpus.seed = corpus.at("seed").get<std::uint64_t>();
    cfg.tol = j.at("tol").get<double>();
    cfg.suites.clear();
    for (const auto& name : j.at("suites")) {
      cfg.suites.push_back(suite_from_name(name.get<std::string>()));
    }
    cfg.output_path = j.value("output", std::string("report.csv"));
    const std::string format = j.value("format", std::string("csv"));
    if (format == "csv") {
      cfg.format = ReportFormat::csv;
    } else if (format == "json") {
      cfg.format = ReportFormat::json;
    } else {
      throw ConfigError("format must be csv or json");
    }
    cfg.jobs = j.value("jobs", 0);
    cfg.limits_k_max = j.value("limits_k_max", 14);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["alpha_grid"] = cfg.alpha_grid;
  j["rho_grid"] = cfg.rho_grid;
  j["intervals"] = nlohmann::json::array();
  for (const auto& iv : cfg.intervals) j["intervals"].push_back({iv.a, iv.b});
  j["corpus"]["families"] = nlohmann::json::array();
  for (Family f : cfg.corpus.families) j["corpus"]["families"].push_back(family_name(f));
  j["corpus"]["count_per_family"] = cfg.corpus.count_per_family;
  j["corpus"]["seed"] = cfg.corpus.seed;
  j["tol"] = cfg.tol;
  j["suites"] = nlohmann::json::array();
  for (SuiteId s : cfg.suites) j["suites"].push_back(suite_name(s));
  j["output"] = cfg.output_path;
  j["format"] = cfg.format == ReportFormat::csv ? "csv" : "json";
  j["jobs"] = cfg.jobs;
  j["limits_k_max"] = cfg.limits_k_max;
  return j.dump(2) + "\n";
}

std::string Report::summary() const {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "rows=%zu pass=%ld fail=%ld skip=%ld constant=%s seed=%llu",
                rows.size(), pass_count, fail_count, skip_count,
                constant_variant_name(constant_variant),
                static_cast<unsigned long long>(seed));
  return buf;
}

namespace {

struct CellTask {
  std::function<std::vector<ReportRow>()> run;
};

// Every (function, alpha, rho[, weight]) combination becomes one task so the
// sweep parallelizes; results land in enumeration order.
std::vector<ReportRow> run_cells(std::vector<CellTask> tasks, int jobs) {
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs <= 0) jobs = 1;
  if (!tasks.empty() && static_cast<std::size_t>(jobs) > tasks.size()) {
    jobs = static_cast<int>(tasks.size());
  }

  std::vector<std::vector<ReportRow>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        results[i] = tasks[i].run();
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  std::vector<ReportRow> rows;
  for (auto& r : results) {
    for (auto& row : r) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Report run_verification(const RunConfig& config) {
  config.validate();
  Report report;
  report.version = kVersion;
  report.seed = config.corpus.seed;
  report.tol = config.tol;
  report.alpha_grid = config.alpha_grid;
  report.rho_grid = config.rho_grid;
  report.intervals = config.intervals;

  ConstantResolution resolution = resolve_disputed_constant(default_constant_sample(), 1e-7);
  report.constant_variant = resolution.verdict;
  const ConstantVariant variant = resolution.verdict;

  const double tol = config.tol;
  std::vector<CellTask> tasks;

  auto want = [&](SuiteId s) {
    for (SuiteId id : config.suites) {
      if (id == s) return true;
    }
    return false;
  };

  for (const Interval& iv : config.intervals) {
    // Direct corpus on [a, b]; power-composed corpus on the hull of
    // [a^rho, b^rho] over the rho grid so every cell can evaluate f there.
    CorpusSpec direct_spec = config.corpus;
    direct_spec.interval = iv;
    const std::vector<TestFunction> corpus3 = generate_convex(direct_spec);

    CorpusSpec composed_spec = config.corpus;
    composed_spec.interval = power_hull(iv, config.rho_grid);
    std::vector<TestFunction> corpus2 = generate_convex(composed_spec);
    for (TestFunction& f : corpus2) f = as_power_composed(std::move(f));

    const std::vector<WeightFunction> weights = generate_weights(iv, 4, config.corpus.seed);

    for (double alpha : config.alpha_grid) {
      for (double rho : config.rho_grid) {
        const FracParams params(alpha, rho);
        if (want(SuiteId::hh2)) {
          for (const TestFunction& f : corpus2) {
            tasks.push_back({[=]() {
              std::vector<ReportRow> rows;
              ReportRow row = base_row(SuiteId::hh2, "th_hh1", f.id, alpha, rho, iv);
              fill_verdict(row, hh_katugampola(f, iv, params, tol));
              rows.push_back(std::move(row));
              if (rho == 1.0) {
                ReportRow base = base_row(SuiteId::hh2, "sari_hh1", f.id, alpha, rho, iv);
                fill_verdict(base, hh_rl_baseline(f, iv, alpha, tol));
                rows.push_back(std::move(base));
              }
              return rows;
            }});
          }
        }
        if (want(SuiteId::bounds2)) {
          for (const TestFunction& f : corpus2) {
            if (!has_deriv_certs(f)) continue;
            const bool second = has_second_deriv(f);
            tasks.push_back({[=]() {
              std::vector<ReportRow> rows;
              if (second) {
                ReportRow row = base_row(SuiteId::bounds2, "th5", f.id, alpha, rho, iv);
                fill_bound(row, second_derivative_bound(f, iv, params, tol, variant));
                rows.push_back(std::move(row));
              }
              ReportRow first = base_row(SuiteId::bounds2, "th4_first", f.id, alpha, rho, iv);
              fill_bound(first, first_derivative_bound(f, iv, params, tol, variant));
              rows.push_back(std::move(first));
              ReportRow strict =
                  base_row(SuiteId::bounds2, "th4_strict", f.id, alpha, rho, iv);
              fill_bound(strict, strict_derivative_bound(f, iv, params, tol, variant));
              rows.push_back(std::move(strict));
              return rows;
            }});
          }
        }
        if (want(SuiteId::identity2)) {
          for (const TestFunction& f : corpus2) {
            if (!f.has_deriv1()) continue;
            tasks.push_back({[=]() {
              std::vector<ReportRow> rows;
              ReportRow row = base_row(SuiteId::identity2, "lem1", f.id, alpha, rho, iv);
              fill_residual(row, trapezoid_identity(f, iv, params, variant, tol));
              rows.push_back(std::move(row));
              return rows;
            }});
          }
        }
        if (want(SuiteId::hh3)) {
          for (const TestFunction& f : corpus3) {
            const bool derivable = has_deriv_certs(f);
            tasks.push_back({[=]() {
              std::vector<ReportRow> rows;
              ReportRow row = base_row(SuiteId::hh3, "hh_thm1", f.id, alpha, rho, iv);
              fill_verdict(row, hh_f(f, iv, params, tol));
              rows.push_back(std::move(row));
              if (derivable) {
                ReportRow bound = base_row(SuiteId::hh3, "thm3_7", f.id, alpha, rho, iv);
                fill_bound(bound, hh_f_derivative_bound(f, iv, params, tol));
                rows.push_back(std::move(bound));
              }
              return rows;
            }});
          }
        }
        if (want(SuiteId::fejer3)) {
          for (const TestFunction& f : corpus3) {
            const bool derivable = has_deriv_certs(f);
            for (const WeightFunction& g : weights) {
              tasks.push_back({[=]() {
                std::vector<ReportRow> rows;
                ReportRow row = base_row(SuiteId::fejer3, "thm3_10", f.id, alpha, rho, iv);
                row.weight_id = g.id;
                fill_verdict(row, fejer_f(f, g, iv, params, tol));
                rows.push_back(std::move(row));
                if (derivable) {
                  ReportRow bound =
                      base_row(SuiteId::fejer3, "thm3_14", f.id, alpha, rho, iv);
                  bound.weight_id = g.id;
                  fill_bound(bound, fejer_bound(f, g, iv, params, tol));
                  rows.push_back(std::move(bound));
                }
                return rows;
              }});
            }
          }
        }
        if (want(SuiteId::identities3)) {
          for (const TestFunction& f : corpus3) {
            if (!f.has_deriv1()) continue;
            tasks.push_back({[=]() {
              std::vector<ReportRow> rows;
              ReportRow row = base_row(SuiteId::identities3, "lemma1", f.id, alpha, rho, iv);
              fill_residual(row, identity_f(f, iv, params, tol));
              rows.push_back(std::move(row));
              return rows;
            }});
            for (const WeightFunction& g : weights) {
              tasks.push_back({[=]() {
                std::vector<ReportRow> rows;
                ReportRow row =
                    base_row(SuiteId::identities3, "lemma2", f.id, alpha, rho, iv);
                row.weight_id = g.id;
                fill_residual(row, fejer_identity(f, g, iv, params, tol));
                rows.push_back(std::move(row));
                return rows;
              }});
            }
          }
        }
      }
    }

    if (want(SuiteId::limits)) {
      std::vector<int> ks(config.limits_k_max);
      for (int i = 0; i < config.limits_k_max; ++i) ks[i] = i + 1;
      for (double alpha : config.alpha_grid) {
        for (const TestFunction& f : corpus3) {
          if (!f.has_deriv1()) continue;  // smooth corpus only
          tasks.push_back({[=]() {
            std::vector<ReportRow> rows;
            ReportRow row = base_row(SuiteId::limits, "thm1_7_rl", f.id, alpha, 0.0, iv);
            LimitStudy study = limit_to_rl(f, iv, alpha, ks, tol);
            row.quantity = study.final_deviation;
            row.bound = std::max(1e-4 * study.scale,
                                 2.5 * study.fitted_constant *
                                     std::ldexp(1.0, -study.k_used));
            row.slack = row.bound - row.quantity;
            row.outcome =
                outcome_of(study_converged(study) && row.quantity <= row.bound, false);
            rows.push_back(std::move(row));
            return rows;
          }});
          const bool hadamard_ok =
              iv.a > 0.0 && max_reliable_k_hadamard(alpha) >= config.limits_k_max;
          tasks.push_back({[=]() {
            std::vector<ReportRow> rows;
            ReportRow row =
                base_row(SuiteId::limits, "thm1_7_hadamard", f.id, alpha, 0.0, iv);
            if (!hadamard_ok) {
              row.outcome = "skip";
              rows.push_back(std::move(row));
              return rows;
            }
            LimitStudy study = limit_to_hadamard(f, iv, alpha, ks, tol);
            row.quantity = study.final_deviation;
            row.bound = std::max(1e-4 * study.scale,
                                 2.5 * study.fitted_constant *
                                     std::ldexp(1.0, -study.k_used));
            row.slack = row.bound - row.quantity;
            row.outcome =
                outcome_of(study_converged(study) && row.quantity <= row.bound, false);
            rows.push_back(std::move(row));
            return rows;
          }});
          const bool convex = f.certificates.has(Certificate::convex);
          tasks.push_back({[=]() {
            std::vector<ReportRow> rows;
            ReportRow row =
                base_row(SuiteId::limits, "hh_hadamard_cor", f.id, alpha, 0.0, iv);
            if (!hadamard_ok || !convex) {
              row.outcome = "skip";
              rows.push_back(std::move(row));
              return rows;
            }
            CorollaryLimitStudy cor = limit_corollary_hh_hadamard(f, iv, alpha, ks, tol);
            row.quantity = cor.study.final_deviation;
            row.bound = std::max(1e-4 * cor.study.scale,
                                 2.5 * cor.study.fitted_constant *
                                     std::ldexp(1.0, -cor.study.k_used));
            row.slack = row.bound - row.quantity;
            const bool pass = cor.ordering_held && study_converged(cor.study) &&
                              row.quantity <= row.bound;
            row.outcome = outcome_of(pass, false);
            rows.push_back(std::move(row));
            return rows;
          }});
        }
      }
    }
  }

  report.rows = run_cells(std::move(tasks), config.jobs);
  for (const ReportRow& row : report.rows) {
    if (row.outcome == "pass") ++report.pass_count;
    else if (row.outcome == "fail") ++report.fail_count;
    else ++report.skip_count;
  }
  return report;
}

std::string report_to_csv(const Report& report) {
  std::string out;
  out += "# fracint ";
  out += report.version;
  out += "\n# seed=" + std::to_string(report.seed) + " tol=" + fmt(report.tol) + "\n";
  out += "# alpha_grid=" + join_grid(report.alpha_grid) + "\n";
  out += "# rho_grid=" + join_grid(report.rho_grid) + "\n";
  out += "# intervals=";
  for (std::size_t i = 0; i < report.intervals.size(); ++i) {
    if (i) out += ";";
    out += "[" + fmt(report.intervals[i].a) + "," + fmt(report.intervals[i].b) + "]";
  }
  out += "\n# constant_variant=";
  out += constant_variant_name(report.constant_variant);
  out += "\n";
  out +=
      "suite,theorem,function,weight,alpha,rho,a,b,lhs,mid,rhs,quantity,bound,residual,"
      "margin_left,margin_right,slack,outcome,quad_error\n";
  for (const ReportRow& r : report.rows) {
    out += r.suite + "," + r.theorem + "," + r.function_id + "," + r.weight_id + "," +
           fmt(r.alpha) + "," + fmt(r.rho) + "," + fmt(r.a) + "," + fmt(r.b) + "," +
           fmt_or_empty(r.lhs) + "," + fmt_or_empty(r.mid) + "," + fmt_or_empty(r.rhs) +
           "," + fmt_or_empty(r.quantity) + "," + fmt_or_empty(r.bound) + "," +
           fmt_or_empty(r.residual) + "," + fmt_or_empty(r.margin_left) + "," +
           fmt_or_empty(r.margin_right) + "," + fmt_or_empty(r.slack) + "," + r.outcome +
           "," + fmt(r.quad_error) + "\n";
  }
  return out;
}

std::string report_to_json(const Report& report) {
  std::string out = "{\n";
  out += "  \"version\": \"" + report.version + "\",\n";
  out += "  \"seed\": " + std::to_string(report.seed) + ",\n";
  out += "  \"tol\": " + fmt(report.tol) + ",\n";
  out += "  \"alpha_grid\": [" + join_grid(report.alpha_grid) + "],\n";
  out += "  \"rho_grid\": [" + join_grid(report.rho_grid) + "],\n";
  out += std::string("  \"constant_variant\": \"") +
         constant_variant_name(report.constant_variant) + "\",\n";
  out += "  \"rows\": [\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const ReportRow& r = report.rows[i];
    out += "    {\"suite\": \"" + r.suite + "\", \"theorem\": \"" + r.theorem +
           "\", \"function\": \"" + r.function_id + "\", \"weight\": \"" + r.weight_id +
           "\", \"alpha\": " + fmt(r.alpha) + ", \"rho\": " + fmt(r.rho) +
           ", \"a\": " + fmt(r.a) + ", \"b\": " + fmt(r.b) + ", \"lhs\": " +
           fmt_or_null(r.lhs) + ", \"mid\": " + fmt_or_null(r.mid) + ", \"rhs\": " +
           fmt_or_null(r.rhs) + ", \"quantity\": " + fmt_or_null(r.quantity) +
           ", \"bound\": " + fmt_or_null(r.bound) + ", \"residual\": " +
           fmt_or_null(r.residual) + ", \"margin_left\": " + fmt_or_null(r.margin_left) +
           ", \"margin_right\": " + fmt_or_null(r.margin_right) + ", \"slack\": " +
           fmt_or_null(r.slack) + ", \"outcome\": \"" + r.outcome +
           "\", \"quad_error\": " + fmt(r.quad_error) + "}";
    out += (i + 1 < report.rows.size()) ? ",\n" : "\n";
  }
  out += "  ],\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "  \"pass\": %ld, \"fail\": %ld, \"skip\": %ld\n",
                report.pass_count, report.fail_count, report.skip_count);
  out += buf;
  out += "}\n";
  return out;
}

void write_report(const Report& report, const RunConfig& config) {
  std::ofstream out(config.output_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output path: " + config.output_path);
  out << (config.format == ReportFormat::csv ? report_to_csv(report)
                                             : report_to_json(report));
}

}  // namespace fracint
