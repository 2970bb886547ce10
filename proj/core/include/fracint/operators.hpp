#pragma once

#include "fracint/quadrature.hpp"
#include "fracint/types.hpp"

namespace fracint {

enum class OperatorKind { riemann_liouville, hadamard, katugampola };
enum class Side { left, right };

/// A single operator evaluation: kind and side select the kernel,
/// base_point is the anchored endpoint (a for left, b for right) and
/// eval_point is where the integral is evaluated.
struct OperatorRequest {
  OperatorKind kind = OperatorKind::katugampola;
  Side side = Side::left;
  FracParams params{1.0, 1.0};  // rho ignored for RL and Hadamard
  double base_point = 0.0;
  double eval_point = 1.0;
  TestFunction integrand;
  double tol = 1e-10;
};

/// (1/Gamma(alpha)) * integral of (x-t)^(alpha-1) f(t) over [a, x]
/// (left; right side mirrors). Power kernel in t itself.
IntegralResult riemann_liouville(const OperatorRequest& req);

/// Log-kernel operator; evaluated through the substitution v = ln t, which
/// turns it into a power kernel in v. All points must be positive.
IntegralResult hadamard(const OperatorRequest& req);

/// rho-parametrized power kernel; evaluated through u = t^rho, which both
/// removes the t^(rho-1) factor (even the t = 0 endpoint singularity it has
/// for rho < 1) and reduces every rho to the same endpoint-weight family.
IntegralResult katugampola(const OperatorRequest& req);

/// The katugampola operator applied to t -> f(t^rho): the form written with
/// the integrand living on [a^rho, b^rho]. After u = t^rho the composition
/// cancels and f is sampled directly, so the integrand must carry the
/// power_composed convention tag and cover [base^rho, eval^rho].
IntegralResult katugampola_composed(const OperatorRequest& req);

/// Dispatch on req.kind and the integrand's domain convention.
IntegralResult evaluate_operator(const OperatorRequest& req);

}  // namespace fracint
