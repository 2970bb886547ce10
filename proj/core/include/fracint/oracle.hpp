#pragma once

#include "fracint/operators.hpp"
#include "fracint/types.hpp"

namespace fracint {

/// Operator value of the constant function c between lo < hi:
/// c * (hi^rho - lo^rho)^alpha / (rho^alpha Gamma(alpha+1)).
/// The constant kernel integral is side-symmetric, so this covers the left
/// operator at hi as well as the right operator at lo.
double closed_form_constant(double c, const FracParams& params, double lo, double hi);

/// Left operator of f(t) = (t^rho - lo^rho)^beta evaluated at hi, or the
/// mirrored right operator of f(t) = (hi^rho - t^rho)^beta evaluated at lo:
/// rho^(-alpha) * Gamma(beta+1)/Gamma(alpha+beta+1) * (hi^rho - lo^rho)^(alpha+beta),
/// computed in log space. Requires beta > -1.
double closed_form_power(double beta_exponent, const FracParams& params, double lo,
                         double hi, Side side = Side::left);

/// Composite midpoint rule on a graded mesh clustered at the kernel's
/// singular endpoint (and at t = 0 when the t^(rho-1) factor is singular
/// there). Entirely separate from the Gauss-Jacobi path: works in the
/// original t variable and shares no quadrature machinery with it.
/// Requires n >= 10^4 panels.
double brute_force(const OperatorRequest& req, long n);

}  // namespace fracint
