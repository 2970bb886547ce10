#pragma once

#include <vector>

#include "fracint/inequalities.hpp"
#include "fracint/operators.hpp"
#include "fracint/types.hpp"

namespace fracint {

enum class LimitTarget { riemann_liouville, hadamard };

/// Deviations of the rho-parametrized operator from its limit target along a
/// dyadic rho sequence, with an empirical order fit on the tail.
struct LimitStudy {
  LimitTarget target = LimitTarget::riemann_liouville;
  double alpha = 0.0;
  double target_value = 0.0;
  double scale = 1.0;  // max(1, |target_value|), for scale-free reporting
  std::vector<double> rho_values;
  std::vector<double> deviations;  // |katugampola - target|, same order
  std::vector<double> step_deviations;  // one per k (two-sided pairs collapse to max)
  double final_deviation = 0.0;    // at the largest evaluated k
  double estimated_order = 0.0;    // slope of log(dev) vs log(parameter distance)
  double fitted_constant = 0.0;    // dev ~ C * distance^order on the tail
  bool conditioning_alarm = false;
  int k_used = 0;  // largest k evaluated before any conditioning cutoff
};

/// Whether the study behaves like a genuine first-order limit: the per-step
/// deviations shrink monotonically after the first two entries (up to a 10%
/// allowance) and the final deviation is consistent with the fitted
/// power law.
bool study_converged(const LimitStudy& study);

/// Deviation study at rho = 1 +/- 2^-k toward the power kernel. The left
/// operator is evaluated at b from base a.
LimitStudy limit_to_rl(const TestFunction& f, const Interval& interval, double alpha,
                       const std::vector<int>& ks, double tol);

/// Deviation study at rho = 2^-k toward the log kernel; requires a > 0.
/// The raw prefactor magnitudes rho^(1-alpha) and rho^-alpha are monitored
/// and the sequence stops (alarm) once they exceed 1e8.
LimitStudy limit_to_hadamard(const TestFunction& f, const Interval& interval, double alpha,
                             const std::vector<int>& ks, double tol);

/// The F-transform midpoint/mean/endpoint chain evaluated at rho = 2^-k,
/// converging to the log-kernel mean; also records whether the ordering held
/// at every k of the sequence.
struct CorollaryLimitStudy {
  LimitStudy study;           // deviations of the rho-mean from the log-kernel mean
  bool ordering_held = true;  // chain ordering at every evaluated k
};

CorollaryLimitStudy limit_corollary_hh_hadamard(const TestFunction& f,
                                                const Interval& interval, double alpha,
                                                const std::vector<int>& ks, double tol);

/// Largest k such that the rho = 2^-k prefactor amplification stays within
/// the 1e8 alarm threshold for this alpha.
int max_reliable_k_hadamard(double alpha);

}  // namespace fracint
