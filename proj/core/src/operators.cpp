#include "fracint/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fracint/special.hpp"

namespace fracint {

namespace {

void validate_orientation(const OperatorRequest& req) {
  if (req.side == Side::left) {
    if (!(req.base_point < req.eval_point)) {
      throw std::domain_error("left operator requires base_point < eval_point");
    }
  } else {
    if (!(req.eval_point < req.base_point)) {
      throw std::domain_error("right operator requires eval_point < base_point");
    }
  }
  if (!(req.tol > 0.0)) throw std::domain_error("operator tol must be > 0");
}

void validate_direct_convention(const OperatorRequest& req) {
  if (req.integrand.convention != DomainConvention::direct) {
    throw std::invalid_argument(
        "direct operator applied to a power_composed integrand; use "
        "katugampola_composed");
  }
}

double lo_point(const OperatorRequest& req) { return std::min(req.base_point, req.eval_point); }
double hi_point(const OperatorRequest& req) { return std::max(req.base_point, req.eval_point); }

// For a left operator the kernel blows up (alpha < 1) at the upper
// integration limit; for a right operator at the lower one.
SingularEnd singular_end_for(Side side) {
  return side == Side::left ? SingularEnd::right : SingularEnd::left;
}

std::vector<double> mapped_kinks(const std::vector<double>& kinks, const RealFn& map) {
  std::vector<double> out;
  out.reserve(kinks.size());
  for (double k : kinks) out.push_back(map(k));
  return out;
}

// Integral of smooth(u) * dist(u)^(alpha-1) over iv, where dist is the
// distance to the singular end. Fractional exponents are absorbed into a
// Jacobi rule (for alpha > 1 the factor is bounded but still non-smooth);
// integer alpha - 1 >= 0 makes the kernel a polynomial and folds in exactly.
IntegralResult kernel_integral(RealFn smooth, const Interval& iv, SingularEnd end,
                               double alpha, const std::vector<double>& kinks,
                               double tol) {
  if (alpha < 1.0 || alpha != std::floor(alpha)) {
    SingularIntegralSpec spec;
    spec.smooth_part = std::move(smooth);
    spec.interval = iv;
    spec.singular_end = end;
    spec.exponent = alpha - 1.0;
    spec.kinks = kinks;
    return integrate_singular(spec, tol);
  }
  const double endpoint = (end == SingularEnd::right) ? iv.b : iv.a;
  const double e = alpha - 1.0;
  auto folded = [smooth = std::move(smooth), endpoint, e](double u) {
    return smooth(u) * std::pow(std::fabs(endpoint - u), e);
  };
  return integrate_smooth(folded, iv, tol, kinks);
}

}  // namespace

IntegralResult riemann_liouville(const OperatorRequest& req) {
  if (req.kind != OperatorKind::riemann_liouville) {
    throw std::invalid_argument("riemann_liouville: wrong request kind");
  }
  validate_orientation(req);
  validate_direct_convention(req);
  const double alpha = req.params.alpha;
  const Interval iv(lo_point(req), hi_point(req));
  const TestFunction& f = req.integrand;
  const double pref = 1.0 / gamma_fn(alpha);
  IntegralResult r = kernel_integral([&f](double t) { return f.eval(t); }, iv,
                                     singular_end_for(req.side), alpha, f.kinks,
                                     req.tol / pref);
  return scale_result(r, pref);
}

IntegralResult hadamard(const OperatorRequest& req) {
  if (req.kind != OperatorKind::hadamard) {
    throw std::invalid_argument("hadamard: wrong request kind");
  }
  validate_orientation(req);
  validate_direct_convention(req);
  if (!(lo_point(req) > 0.0)) {
    throw std::domain_error("hadamard operator requires all points > 0");
  }
  const double alpha = req.params.alpha;
  const Interval iv(std::log(lo_point(req)), std::log(hi_point(req)));
  const TestFunction& f = req.integrand;
  const double pref = 1.0 / gamma_fn(alpha);
  IntegralResult r = kernel_integral([&f](double v) { return f.eval(std::exp(v)); }, iv,
                                     singular_end_for(req.side), alpha,
                                     mapped_kinks(f.kinks, [](double k) { return std::log(k); }),
                                     req.tol / pref);
  return scale_result(r, pref);
}

IntegralResult katugampola(const OperatorRequest& req) {
  if (req.kind != OperatorKind::katugampola) {
    throw std::invalid_argument("katugampola: wrong request kind");
  }
  validate_orientation(req);
  validate_direct_convention(req);
  if (!(lo_point(req) >= 0.0)) {
    throw std::domain_error("katugampola operator requires points >= 0");
  }
  const double alpha = req.params.alpha;
  const double rho = req.params.rho;
  const double x = req.eval_point;
  const TestFunction& f = req.integrand;

  // Right operator evaluated at 0 with rho >= 1: the kernel and the
  // t^(rho-1) factor coincide there and merge into the single weight
  // t^(rho alpha - 1); after u = t^rho the integrand would not be smooth at
  // the weighted end. (For rho < 1 the u-space route below is smooth.)
  if (req.side == Side::right && x == 0.0 && rho >= 1.0) {
    SingularIntegralSpec spec;
    spec.smooth_part = [&f](double t) { return f.eval(t); };
    spec.interval = Interval(0.0, req.base_point);
    spec.singular_end = SingularEnd::left;
    spec.exponent = rho * alpha - 1.0;
    spec.kinks = f.kinks;
    const double pref = std::pow(rho, 1.0 - alpha) / gamma_fn(alpha);
    return scale_result(integrate_singular(spec, req.tol / pref), pref);
  }

  if (rho >= 1.0) {
    // t^(rho-1) is regular, so stay in t: the kernel's smooth cofactor is
    // ((x^rho - t^rho)/(x - t))^(alpha-1) and f is sampled where it lives.
    const Interval iv(lo_point(req), hi_point(req));
    auto smooth = [&f, x, rho, alpha](double t) {
      const double ratio = (t < x) ? power_diff_ratio(x, t, rho, alpha - 1.0)
                                   : power_diff_ratio(t, x, rho, alpha - 1.0);
      return std::pow(t, rho - 1.0) * ratio * f.eval(t);
    };
    const double pref = std::pow(rho, 1.0 - alpha) / gamma_fn(alpha);
    IntegralResult r = kernel_integral(smooth, iv, singular_end_for(req.side), alpha,
                                       f.kinks, req.tol / pref);
    return scale_result(r, pref);
  }

  // rho < 1: u = t^rho removes the t^(rho-1) endpoint singularity and the
  // root composition u^(1/rho) stays at least C^1.
  const Interval iv(std::pow(lo_point(req), rho), std::pow(hi_point(req), rho));
  const double inv_rho = 1.0 / rho;
  const double pref = std::pow(rho, -alpha) / gamma_fn(alpha);
  IntegralResult r = kernel_integral(
      [&f, inv_rho](double u) { return f.eval(std::pow(u, inv_rho)); }, iv,
      singular_end_for(req.side), alpha,
      mapped_kinks(f.kinks, [rho](double k) { return std::pow(k, rho); }),
      req.tol / pref);
  return scale_result(r, pref);
}

IntegralResult katugampola_composed(const OperatorRequest& req) {
  if (req.kind != OperatorKind::katugampola) {
    throw std::invalid_argument("katugampola_composed: wrong request kind");
  }
  validate_orientation(req);
  if (req.integrand.convention != DomainConvention::power_composed) {
    throw std::invalid_argument(
        "katugampola_composed requires a power_composed integrand");
  }
  if (!(lo_point(req) >= 0.0)) {
    throw std::domain_error("katugampola operator requires points >= 0");
  }
  const double alpha = req.params.alpha;
  const double rho = req.params.rho;
  const Interval iv(std::pow(lo_point(req), rho), std::pow(hi_point(req), rho));
  if (iv.a < req.integrand.domain.a - 1e-12 || iv.b > req.integrand.domain.b + 1e-12) {
    throw std::domain_error("composed integrand domain does not cover [base^rho, eval^rho]");
  }
  const TestFunction& f = req.integrand;
  const double pref = std::pow(rho, -alpha) / gamma_fn(alpha);
  IntegralResult r = kernel_integral([&f](double u) { return f.eval(u); }, iv,
                                     singular_end_for(req.side), alpha, f.kinks,
                                     req.tol / pref);
  return scale_result(r, pref);
}

IntegralResult evaluate_operator(const OperatorRequest& req) {
  switch (req.kind) {
    case OperatorKind::riemann_liouville:
      return riemann_liouville(req);
    case OperatorKind::hadamard:
      return hadamard(req);
    case OperatorKind::katugampola:
      return req.integrand.convention == DomainConvention::power_composed
                 ? katugampola_composed(req)
                 : katugampola(req);
  }
  throw std::invalid_argument("evaluate_operator: unknown kind");
}

}  // namespace fracint
