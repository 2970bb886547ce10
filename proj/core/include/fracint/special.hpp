#pragma once

namespace fracint {

/// Gamma function for x > 0. Relative error below 1e-13 on (0, 170).
/// Throws std::domain_error for x <= 0.
double gamma_fn(double x);

/// Natural log of Gamma for x > 0.
double log_gamma(double x);

/// Beta function B(p, q) = Gamma(p)Gamma(q)/Gamma(p+q), p, q > 0.
/// Evaluated in log space; the argument order is canonicalized so that
/// beta_fn(p, q) and beta_fn(q, p) are the same floating-point computation.
double beta_fn(double p, double q);

/// hi^rho - lo^rho without cancellation, for hi >= lo >= 0.
double power_diff(double hi, double lo, double rho);

/// ((hi^rho - lo^rho) / (hi - lo))^e: the smooth factor left over after
/// pulling (hi - lo)^e out of (hi^rho - lo^rho)^e. Stable as hi -> lo,
/// where it tends to (rho lo^(rho-1))^e.
double power_diff_ratio(double hi, double lo, double rho, double e);

}  // namespace fracint
