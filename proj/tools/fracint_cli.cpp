// fracint: evaluate generalized fractional integrals and run the inequality
// verification suites from the command line.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fracint/corpus.hpp"
#include "fracint/inequalities.hpp"
#include "fracint/limits.hpp"
#include "fracint/operators.hpp"
#include "fracint/report.hpp"

namespace {

using namespace fracint;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerification = 3;
constexpr int kExitConfig = 4;

TestFunction registry_function(const std::string& name) {
  TestFunction f;
  f.id = name;
  f.domain = Interval(0.0, 1e9);
  if (name == "const1") {
    f.eval = [](double) { return 1.0; };
    f.deriv1 = [](double) { return 0.0; };
    f.deriv2 = [](double) { return 0.0; };
  } else if (name == "linear") {
    f.eval = [](double t) { return t; };
    f.deriv1 = [](double) { return 1.0; };
    f.deriv2 = [](double) { return 0.0; };
  } else if (name == "square") {
    f.eval = [](double t) { return t * t; };
    f.deriv1 = [](double t) { return 2.0 * t; };
    f.deriv2 = [](double) { return 2.0; };
  } else if (name == "exp") {
    f.eval = [](double t) { return std::exp(t); };
    f.deriv1 = [](double t) { return std::exp(t); };
    f.deriv2 = [](double t) { return std::exp(t); };
  } else if (name == "log") {
    f.eval = [](double t) { return std::log(t); };
    f.deriv1 = [](double t) { return 1.0 / t; };
    f.deriv2 = [](double t) { return -1.0 / (t * t); };
    f.domain = Interval(1e-12, 1e9);
  } else {
    throw std::invalid_argument("unknown function id: " + name +
                                " (known: const1, linear, square, exp, log)");
  }
  f.certificates.add(Certificate::convex);
  return f;
}

int run_eval(const std::string& kind, const std::string& side, double alpha, double rho,
             double a, double x, const std::string& fn, double tol) {
  OperatorRequest req;
  req.side = (side == "right") ? Side::right : Side::left;
  req.params = FracParams(alpha, rho);
  // base_point is a; for right-side requests a is the upper base.
  if (req.side == Side::left) {
    req.base_point = a;
    req.eval_point = x;
  } else {
    req.base_point = a;
    req.eval_point = x;
  }
  req.integrand = registry_function(fn);
  req.tol = tol;

  IntegralResult r;
  if (kind == "riemann-liouville" || kind == "rl") {
    req.kind = OperatorKind::riemann_liouville;
    r = riemann_liouville(req);
  } else if (kind == "hadamard") {
    req.kind = OperatorKind::hadamard;
    r = hadamard(req);
  } else if (kind == "katugampola") {
    req.kind = OperatorKind::katugampola;
    r = katugampola(req);
  } else if (kind == "katugampola-composed") {
    req.kind = OperatorKind::katugampola;
    req.integrand.convention = DomainConvention::power_composed;
    r = katugampola_composed(req);
  } else {
    throw std::invalid_argument("unknown kind: " + kind);
  }
  std::printf("value=%.15g error_estimate=%.3g nodes=%ld converged=%s\n", r.value,
              r.error_estimate, r.nodes_used, r.converged ? "true" : "false");
  return kExitOk;
}

int run_limits(const std::string& fn, double a, double b, double alpha,
               const std::string& target, int kmax, double tol) {
  TestFunction f = registry_function(fn);
  Interval iv(a, b);
  std::vector<int> ks;
  for (int k = 1; k <= kmax; ++k) ks.push_back(k);

  LimitStudy study = (target == "hadamard")
                         ? limit_to_hadamard(f, iv, alpha, ks, tol)
                         : limit_to_rl(f, iv, alpha, ks, tol);
  std::printf("# target=%s value=%.15g alpha=%g\n",
              target == "hadamard" ? "hadamard" : "riemann-liouville",
              study.target_value, alpha);
  std::printf("%-4s %-22s %-14s\n", "k", "rho", "deviation");
  int k_index = 0;
  for (std::size_t i = 0; i < study.rho_values.size(); ++i) {
    // rl studies interleave the two-sided pairs per k
    if (target != "hadamard") {
      k_index = static_cast<int>(i / 2) + 1;
    } else {
      k_index = static_cast<int>(i) + 1;
    }
    std::printf("%-4d %-22.16g %-14.6g\n", k_index, study.rho_values[i],
                study.deviations[i]);
  }
  std::printf("final_deviation=%.6g estimated_order=%.3f fitted_constant=%.4g%s\n",
              study.final_deviation, study.estimated_order, study.fitted_constant,
              study.conditioning_alarm ? " conditioning_alarm=true" : "");
  return kExitOk;
}

std::vector<ConstantSampleCase> seeded_constant_sample(std::uint64_t seed) {
  auto sample = default_constant_sample();
  CorpusSpec spec;
  spec.families = {Family::quadratic, Family::exponential, Family::power_p};
  spec.count_per_family = 1;
  spec.seed = seed;
  spec.interval = Interval(0.0, 1.0);
  for (TestFunction& f : generate_convex(spec)) {
    TestFunction composed = as_power_composed(std::move(f));
    sample.push_back({composed, Interval(0.0, 1.0), FracParams(0.5, 1.0)});
    sample.push_back({composed, Interval(0.0, 1.0), FracParams(2.0, 2.0)});
  }
  return sample;
}

int run_constant(double tol, std::uint64_t seed, bool degenerate) {
  const auto sample = degenerate ? degenerate_constant_sample() : seeded_constant_sample(seed);
  ConstantResolution res = resolve_disputed_constant(sample, tol);
  std::printf("verdict=%s\n", constant_variant_name(res.verdict));
  std::printf("%-24s %-8s %-8s %-14s %-14s\n", "case", "alpha", "rho", "resid_with",
              "resid_without");
  for (const auto& row : res.table) {
    std::printf("%-24s %-8g %-8g %-14.6g %-14.6g\n", row.label.c_str(), row.alpha, row.rho,
                row.residual_with_alpha, row.residual_without_alpha);
  }
  std::printf("worst_with_alpha=%.6g worst_without_alpha=%.6g\n", res.worst_with_alpha,
              res.worst_without_alpha);
  return kExitOk;
}

int run_corpus(double a, double b, int count, std::uint64_t seed,
               const std::string& out_path) {
  CorpusSpec spec;
  spec.families = all_families();
  spec.count_per_family = count;
  spec.seed = seed;
  spec.interval = Interval(a, b);
  auto corpus = generate_convex(spec);
  const std::string manifest = corpus_manifest(spec, corpus);
  if (out_path.empty() || out_path == "-") {
    std::fputs(manifest.c_str(), stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output path: " + out_path);
    out << manifest;
  }
  return kExitOk;
}

int run_verify(const std::string& config_path, const std::string& out_override,
               const std::string& format_override, double tol_override,
               std::int64_t seed_override, int jobs_override) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + config_path);
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig config = parse_config(ss.str());
  if (!out_override.empty()) config.output_path = out_override;
  if (!format_override.empty()) {
    if (format_override == "csv") config.format = ReportFormat::csv;
    else if (format_override == "json") config.format = ReportFormat::json;
    else throw ConfigError("--format must be csv or json");
  }
  if (tol_override > 0.0) config.tol = tol_override;
  if (seed_override >= 0) config.corpus.seed = static_cast<std::uint64_t>(seed_override);
  if (jobs_override > 0) config.jobs = jobs_override;
  config.validate();

  Report report = run_verification(config);
  write_report(report, config);
  std::printf("%s\n", report.summary().c_str());
  std::printf("report written to %s\n", config.output_path.c_str());
  return report.fail_count == 0 ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized fractional integral engine and verification harness"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate one operator");
  std::string kind = "katugampola", side = "left", fn = "const1";
  double alpha = 0.5, rho = 1.0, a = 0.0, x = 1.0, tol = 1e-10;
  eval->add_option("--kind", kind, "riemann-liouville|hadamard|katugampola|katugampola-composed");
  eval->add_option("--side", side, "left|right");
  eval->add_option("--alpha", alpha, "order, > 0")->required();
  eval->add_option("--rho", rho, "generalization parameter, > 0");
  eval->add_option("--a", a, "base point")->required();
  eval->add_option("--x", x, "evaluation point")->required();
  eval->add_option("--fn", fn, "function id: const1|linear|square|exp|log");
  eval->add_option("--tol", tol, "quadrature tolerance");

  // verify
  auto* verify = app.add_subcommand("verify", "run suites over corpus x grids");
  std::string config_path, out_override, format_override;
  double tol_override = 0.0;
  std::int64_t seed_override = -1;
  int jobs_override = 0;
  verify->add_option("--config", config_path, "JSON run configuration")->required();
  verify->add_option("--out", out_override, "override output path");
  verify->add_option("--format", format_override, "override format: csv|json");
  verify->add_option("--tol", tol_override, "override quadrature tolerance");
  verify->add_option("--seed", seed_override, "override corpus seed");
  verify->add_option("--jobs", jobs_override, "worker threads (default: hardware)");

  // limits
  auto* limits = app.add_subcommand("limits", "deviation table along a rho sequence");
  std::string limit_fn = "const1", target = "rl";
  double la = 1.0, lb = 2.0, lalpha = 0.5, ltol = 1e-10;
  int kmax = 10;
  limits->add_option("--fn", limit_fn, "function id");
  limits->add_option("--a", la, "left endpoint")->required();
  limits->add_option("--b", lb, "right endpoint")->required();
  limits->add_option("--alpha", lalpha, "order")->required();
  limits->add_option("--target", target, "rl|hadamard");
  limits->add_option("--kmax", kmax, "largest k of the 2^-k sequence");
  limits->add_option("--tol", ltol, "quadrature tolerance");

  // constant
  auto* constant = app.add_subcommand("constant", "adjudicate the identity constant");
  double ctol = 1e-7;
  std::uint64_t cseed = 42;
  bool degenerate = false;
  constant->add_option("--tol", ctol, "residual tolerance for a variant to qualify");
  constant->add_option("--seed", cseed, "seed for the extra corpus sample members");
  constant->add_flag("--degenerate-sample", degenerate,
                     "use midpoint-centered linear functions (shows the ambiguity error)");

  // corpus
  auto* corpus = app.add_subcommand("corpus", "dump the corpus manifest");
  double ca = 0.0, cb = 1.0;
  int ccount = 3;
  std::uint64_t corpus_seed = 42;
  std::string corpus_out;
  corpus->add_option("--a", ca, "left endpoint");
  corpus->add_option("--b", cb, "right endpoint");
  corpus->add_option("--count", ccount, "members per family");
  corpus->add_option("--seed", corpus_seed, "corpus seed");
  corpus->add_option("--out", corpus_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return run_eval(kind, side, alpha, rho, a, x, fn, tol);
    if (*verify) {
      return run_verify(config_path, out_override, format_override, tol_override,
                        seed_override, jobs_override);
    }
    if (*limits) return run_limits(limit_fn, la, lb, lalpha, target, kmax, ltol);
    if (*constant) return run_constant(ctol, cseed, degenerate);
    if (*corpus) return run_corpus(ca, cb, ccount, corpus_seed, corpus_out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const ConstantResolutionError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitVerification;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
