#include "fracint/oracle.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "fracint/special.hpp"

namespace fracint {

namespace {

double width_pow_rho(double lo, double hi, double rho) {
  const double w = std::pow(hi, rho) - std::pow(lo, rho);
  if (!(w > 0.0)) throw std::domain_error("closed form requires lo < hi");
  return w;
}

// Composite midpoint over [lo, hi] with both halves graded toward their
// outer end (t = lo + span y^g on the left half, mirrored on the right).
// The integrand receives (t, d_lo, d_hi) where the distance to the nearer
// outer endpoint is the analytic mesh value, so endpoint kernels can be
// evaluated without the cancellation of recomputing hi - t near hi.
using GradedIntegrand = std::function<double(double t, double d_lo, double d_hi)>;

double graded_midpoint(const GradedIntegrand& g, double lo, double hi, long panels,
                       double grade_lo, double grade_hi) {
  const double mid = 0.5 * (lo + hi);
  const long half = panels / 2;
  double total = 0.0;
  {
    const double span = mid - lo;
    const double inv = 1.0 / static_cast<double>(half);
    double sum = 0.0;
    for (long j = 0; j < half; ++j) {
      const double y = (static_cast<double>(j) + 0.5) * inv;
      const double d = span * std::pow(y, grade_lo);
      if (d == 0.0) continue;  // underflowed panel; true contribution negligible
      const double t = lo + d;
      sum += g(t, d, hi - t) * std::pow(y, grade_lo - 1.0);
    }
    total += grade_lo * span * sum * inv;
  }
  {
    const double span = hi - mid;
    const double inv = 1.0 / static_cast<double>(half);
    double sum = 0.0;
    for (long j = 0; j < half; ++j) {
      const double y = (static_cast<double>(j) + 0.5) * inv;
      const double d = span * std::pow(y, grade_hi);
      if (d == 0.0) continue;
      const double t = hi - d;
      sum += g(t, t - lo, d) * std::pow(y, grade_hi - 1.0);
    }
    total += grade_hi * span * sum * inv;
  }
  return total;
}

}  // namespace

double closed_form_constant(double c, const FracParams& params, double lo, double hi) {
  if (!(lo >= 0.0)) throw std::domain_error("closed_form_constant requires lo >= 0");
  const double w = width_pow_rho(lo, hi, params.rho);
  return c * std::pow(w, params.alpha) /
         (std::pow(params.rho, params.alpha) * gamma_fn(params.alpha + 1.0));
}

double closed_form_power(double beta_exponent, const FracParams& params, double lo,
                         double hi, Side /*side*/) {
  if (!(beta_exponent > -1.0)) {
    throw std::domain_error("closed_form_power requires beta > -1");
  }
  if (!(lo >= 0.0)) throw std::domain_error("closed_form_power requires lo >= 0");
  const double alpha = params.alpha;
  const double w = width_pow_rho(lo, hi, params.rho);
  // The anchored power family gives the same value on both sides; the side
  // parameter only documents which function the caller means.
  return std::exp(-alpha * std::log(params.rho) + log_gamma(beta_exponent + 1.0) -
                  log_gamma(alpha + beta_exponent + 1.0) +
                  (alpha + beta_exponent) * std::log(w));
}

double brute_force(const OperatorRequest& req, long n) {
  if (n < 10000) throw std::invalid_argument("brute_force requires n >= 10^4");
  const double alpha = req.params.alpha;
  const double rho = req.params.rho;
  const double lo = std::min(req.base_point, req.eval_point);
  const double hi = std::max(req.base_point, req.eval_point);
  const double x = req.eval_point;
  const bool eval_at_hi = (x == hi);
  const TestFunction& f = req.integrand;
  const bool composed = f.convention == DomainConvention::power_composed;

  auto sample_f = [&](double t) { return composed ? f.eval(std::pow(t, rho)) : f.eval(t); };

  // On the mesh half adjacent to x the analytic distance d carries the
  // information (t itself may round to x); on the far half t is exact and
  // d may have been rounded. near_x tells the kernels which to trust.
  const double mid = 0.5 * (lo + hi);
  auto near_x = [&](double t) { return eval_at_hi ? (t >= mid) : (t <= mid); };

  auto power_gap = [&](double t, double d) {  // |x^rho - t^rho|
    if (!eval_at_hi && x == 0.0) return std::pow(d, rho);  // there t = d exactly
    if (near_x(t)) {
      return eval_at_hi ? -std::pow(x, rho) * std::expm1(rho * std::log1p(-d / x))
                        : std::pow(x, rho) * std::expm1(rho * std::log1p(d / x));
    }
    return std::fabs(std::pow(x, rho) - std::pow(t, rho));
  };

  auto log_gap = [&](double t, double d) {  // |ln(x/t)|
    if (near_x(t)) return eval_at_hi ? -std::log1p(-d / x) : std::log1p(d / x);
    return std::fabs(std::log(x / t));
  };

  // Right operator at eval point 0: the kernel and t^(rho-1) merge into the
  // exact power t^(rho alpha - 1). For rho*alpha < 1 a graded t-mesh cannot
  // represent the points carrying the remaining mass, so integrate in
  // w = t^(rho alpha), where the integrand is plain f(w^(1/(rho alpha))).
  if (req.kind == OperatorKind::katugampola && !eval_at_hi && x == 0.0 &&
      rho * alpha < 1.0) {
    const double p = rho * alpha;
    const double w_hi = std::pow(hi, p);
    // The integrand picks up w^(1/alpha) terms through t^rho; grading with
    // exponent 2*alpha keeps the composite midpoint rule second order.
    auto integrand = [&](double w, double, double) {
      return sample_f(std::pow(w, 1.0 / p));
    };
    return std::pow(rho, 1.0 - alpha) / gamma_fn(alpha) / p *
           graded_midpoint(integrand, 0.0, w_hi, n, std::max(1.0, 2.0 * alpha), 1.0);
  }

  GradedIntegrand integrand;
  double prefactor = 1.0;
  switch (req.kind) {
    case OperatorKind::riemann_liouville:
      integrand = [&](double t, double d_lo, double d_hi) {
        const double d = eval_at_hi ? d_hi : d_lo;
        return std::pow(d, alpha - 1.0) * sample_f(t);
      };
      prefactor = 1.0 / gamma_fn(alpha);
      break;
    case OperatorKind::hadamard: {
      if (!(lo > 0.0)) throw std::domain_error("hadamard brute force requires points > 0");
      integrand = [&](double t, double d_lo, double d_hi) {
        const double d = eval_at_hi ? d_hi : d_lo;
        return std::pow(log_gap(t, d), alpha - 1.0) * sample_f(t) / t;
      };
      prefactor = 1.0 / gamma_fn(alpha);
      break;
    }
    case OperatorKind::katugampola:
      if (!(lo >= 0.0)) throw std::domain_error("katugampola brute force requires points >= 0");
      integrand = [&](double t, double d_lo, double d_hi) {
        const double d = eval_at_hi ? d_hi : d_lo;
        return std::pow(t, rho - 1.0) * std::pow(power_gap(t, d), alpha - 1.0) *
               sample_f(t);
      };
      prefactor = std::pow(rho, 1.0 - alpha) / gamma_fn(alpha);
      break;
  }

  // Local integrand exponent at each end decides the mesh grading 2/(1+mu).
  // The kernel contributes alpha-1 in (x-t) at the eval point -- measured in
  // t that becomes rho*(alpha-1) when the eval point is 0 -- and the
  // t^(rho-1) factor contributes rho-1 at t = 0.
  const bool kat = req.kind == OperatorKind::katugampola;
  auto grade_for = [&](double endpoint) {
    double mu = 0.0;
    if (endpoint == x) mu += (kat && endpoint == 0.0) ? rho * (alpha - 1.0) : alpha - 1.0;
    if (kat && endpoint == 0.0) mu += rho - 1.0;
    return std::max(1.0, 2.0 / (1.0 + mu));
  };

  return prefactor * graded_midpoint(integrand, lo, hi, n, grade_for(lo), grade_for(hi));
}

}  // namespace fracint
