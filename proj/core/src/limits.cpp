#include "fracint/limits.hpp"

#include <cmath>
#include <stdexcept>

#include "fracint/special.hpp"

namespace fracint {

namespace {

constexpr double kAmplificationAlarm = 1e8;

double rl_left_at(const TestFunction& f, const Interval& iv, double alpha, double tol) {
  OperatorRequest req;
  req.kind = OperatorKind::riemann_liouville;
  req.side = Side::left;
  req.params = FracParams(alpha, 1.0);
  req.base_point = iv.a;
  req.eval_point = iv.b;
  req.integrand = f;
  req.tol = tol;
  return riemann_liouville(req).value;
}

double hadamard_left_at(const TestFunction& f, const Interval& iv, double alpha, double tol) {
  OperatorRequest req;
  req.kind = OperatorKind::hadamard;
  req.side = Side::left;
  req.params = FracParams(alpha, 1.0);
  req.base_point = iv.a;
  req.eval_point = iv.b;
  req.integrand = f;
  req.tol = tol;
  return hadamard(req).value;
}

// Least-squares slope and constant of log(dev) against log(distance),
// skipping the first two sequence entries and any zero deviations.
void fit_order(const std::vector<double>& distances, const std::vector<double>& devs,
               double& order, double& constant) {
  std::vector<double> xs, ys;
  for (std::size_t i = 2; i < devs.size(); ++i) {
    if (devs[i] > 0.0 && distances[i] > 0.0) {
      xs.push_back(std::log(distances[i]));
      ys.push_back(std::log(devs[i]));
    }
  }
  if (xs.size() < 2) {
    order = 0.0;
    constant = devs.empty() ? 0.0 : devs.back();
    return;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  constant = std::exp((sy - order * sx) / n);
}

}  // namespace

int max_reliable_k_hadamard(double alpha) {
  // rho = 2^-k: amplification max(rho^(1-alpha), rho^-alpha) = 2^(k*alpha)
  // for alpha >= 1 dominated by rho^-alpha; alarm at 1e8.
  const double amp_exponent = std::max(alpha, std::fabs(1.0 - alpha));
  const int k = static_cast<int>(std::floor(std::log2(kAmplificationAlarm) / amp_exponent));
  return std::max(1, k);
}

bool study_converged(const LimitStudy& study) {
  const auto& dev = study.step_deviations;
  if (dev.empty()) return false;
  const double noise_floor = 1e-10 * study.scale;
  if (study.final_deviation <= noise_floor) return true;  // exact case, only noise
  if (dev.size() < 4) return false;
  // Genuine decay: the final deviation sits well below the early-sequence
  // level. A plain monotonicity test is too strict -- the deviation can
  // cross zero mid-sequence when the leading coefficients trade sign.
  const double early = std::max({dev[1], dev[2], dev[3]});
  return study.final_deviation <= std::max(0.25 * early, noise_floor);
}

LimitStudy limit_to_rl(const TestFunction& f, const Interval& iv, double alpha,
                       const std::vector<int>& ks, double tol) {
  if (ks.empty()) throw std::invalid_argument("limit_to_rl: empty k sequence");
  LimitStudy study;
  study.target = LimitTarget::riemann_liouville;
  study.alpha = alpha;
  study.target_value = rl_left_at(f, iv, alpha, tol);
  study.scale = std::max(1.0, std::fabs(study.target_value));

  std::vector<double> distances;
  std::vector<double> pair_max;
  for (int k : ks) {
    const double h = std::ldexp(1.0, -k);
    double worst = 0.0;
    for (double rho : {1.0 - h, 1.0 + h}) {
      if (!(rho > 0.0)) continue;
      OperatorRequest req;
      req.kind = OperatorKind::katugampola;
      req.side = Side::left;
      req.params = FracParams(alpha, rho);
      req.base_point = iv.a;
      req.eval_point = iv.b;
      req.integrand = f;
      req.tol = tol;
      const double dev = std::fabs(katugampola(req).value - study.target_value);
      study.rho_values.push_back(rho);
      study.deviations.push_back(dev);
      worst = std::max(worst, dev);
    }
    distances.push_back(h);
    pair_max.push_back(worst);
    study.k_used = k;
  }
  study.step_deviations = pair_max;
  study.final_deviation = pair_max.back();
  fit_order(distances, pair_max, study.estimated_order, study.fitted_constant);
  return study;
}

LimitStudy limit_to_hadamard(const TestFunction& f, const Interval& iv, double alpha,
                             const std::vector<int>& ks, double tol) {
  if (ks.empty()) throw std::invalid_argument("limit_to_hadamard: empty k sequence");
  if (!(iv.a > 0.0)) {
    throw std::domain_error("limit_to_hadamard requires a > 0");
  }
  LimitStudy study;
  study.target = LimitTarget::hadamard;
  study.alpha = alpha;
  study.target_value = hadamard_left_at(f, iv, alpha, tol);
  study.scale = std::max(1.0, std::fabs(study.target_value));

  std::vector<double> distances;
  std::vector<double> devs;
  for (int k : ks) {
    const double rho = std::ldexp(1.0, -k);
    const double amplification =
        std::max(std::pow(rho, 1.0 - alpha), std::pow(rho, -alpha));
    if (amplification > kAmplificationAlarm) {
      study.conditioning_alarm = true;
      break;
    }
    OperatorRequest req;
    req.kind = OperatorKind::katugampola;
    req.side = Side::left;
    req.params = FracParams(alpha, rho);
    req.base_point = iv.a;
    req.eval_point = iv.b;
    req.integrand = f;
    req.tol = tol;
    const double dev = std::fabs(katugampola(req).value - study.target_value);
    study.rho_values.push_back(rho);
    study.deviations.push_back(dev);
    distances.push_back(rho);
    devs.push_back(dev);
    study.k_used = k;
  }
  if (devs.empty()) {
    throw std::domain_error("limit_to_hadamard: conditioning alarm at the first k");
  }
  study.step_deviations = devs;
  study.final_deviation = devs.back();
  fit_order(distances, devs, study.estimated_order, study.fitted_constant);
  return study;
}

CorollaryLimitStudy limit_corollary_hh_hadamard(const TestFunction& f, const Interval& iv,
                                                double alpha, const std::vector<int>& ks,
                                                double tol) {
  if (ks.empty()) throw std::invalid_argument("limit_corollary: empty k sequence");
  if (!(iv.a > 0.0)) throw std::domain_error("limit_corollary requires a > 0");

  FTransform F = f_transform(f, iv);
  TestFunction Ftf = F.as_test_function();

  // Log-kernel mean: Gamma(alpha+1) / (2 ln(b/a)^alpha) * [H_{a+}F(b) + H_{b-}F(a)].
  OperatorRequest hl;
  hl.kind = OperatorKind::hadamard;
  hl.side = Side::left;
  hl.params = FracParams(alpha, 1.0);
  hl.base_point = iv.a;
  hl.eval_point = iv.b;
  hl.integrand = Ftf;
  hl.tol = tol;
  OperatorRequest hr = hl;
  hr.side = Side::right;
  hr.base_point = iv.b;
  hr.eval_point = iv.a;
  const double log_width = std::log(iv.b / iv.a);
  const double mid_target = gamma_fn(alpha + 1.0) / (2.0 * std::pow(log_width, alpha)) *
                            (hadamard(hl).value + hadamard(hr).value);

  CorollaryLimitStudy out;
  out.study.target = LimitTarget::hadamard;
  out.study.alpha = alpha;
  out.study.target_value = mid_target;
  out.study.scale = std::max(1.0, std::fabs(mid_target));

  const double lhs = F.eval(iv.midpoint());
  const double rhs = 0.5 * (F.eval(iv.a) + F.eval(iv.b));

  std::vector<double> distances, devs;
  for (int k : ks) {
    const double rho = std::ldexp(1.0, -k);
    const double amplification =
        std::max(std::pow(rho, 1.0 - alpha), std::pow(rho, -alpha));
    if (amplification > kAmplificationAlarm) {
      out.study.conditioning_alarm = true;
      break;
    }
    InequalityVerdict v = hh_f(f, iv, FracParams(alpha, rho), tol);
    const double dev = std::fabs(v.mid - mid_target);
    out.study.rho_values.push_back(rho);
    out.study.deviations.push_back(dev);
    distances.push_back(rho);
    devs.push_back(dev);
    out.study.k_used = k;
    const double chain_tol = 1e-7 + 10.0 * v.quad_error;
    if (v.mid - lhs < -chain_tol || rhs - v.mid < -chain_tol) out.ordering_held = false;
  }
  if (devs.empty()) {
    throw std::domain_error("limit_corollary: conditioning alarm at the first k");
  }
  out.study.step_deviations = devs;
  out.study.final_deviation = devs.back();
  fit_order(distances, devs, out.study.estimated_order, out.study.fitted_constant);
  return out;
}

}  // namespace fracint
