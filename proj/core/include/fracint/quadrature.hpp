#pragma once

#include <functional>
#include <vector>

#include "fracint/types.hpp"

namespace fracint {

struct QuadNode {
  double node;
  double weight;
};

/// Gauss-Jacobi rule on [0, 1] for the weight (1-s)^lambda, lambda > -1:
/// integrates s^k (1-s)^lambda exactly for k <= 2n-1. Nodes lie in (0, 1),
/// weights are positive and sum to 1/(lambda+1). Rules are memoized behind
/// a read-mostly cache, so repeated requests are cheap.
std::vector<QuadNode> gauss_jacobi_rule(int n, double lambda);

/// Gauss-Legendre rule on [0, 1]; equivalent to gauss_jacobi_rule(n, 0).
std::vector<QuadNode> gauss_legendre_rule(int n);

enum class SingularEnd { left, right };

/// Describes integral of smooth_part(u) * d(u)^exponent over the interval,
/// where d(u) is the distance from u to the singular endpoint. exponent > -1
/// keeps the integral finite; positive exponents are accepted too (the
/// factor is then merely non-smooth at the endpoint, and absorbing it into
/// the rule weights restores fast convergence).
struct SingularIntegralSpec {
  RealFn smooth_part;
  Interval interval{0.0, 1.0};
  SingularEnd singular_end = SingularEnd::right;
  double exponent = 0.0;
  std::vector<double> kinks;  // interior split points, need not be sorted
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;  // |last refinement - previous refinement|
  long nodes_used = 0;          // total integrand evaluations
  bool converged = false;

  IntegralResult& operator+=(const IntegralResult& o) {
    value += o.value;
    error_estimate += o.error_estimate;
    nodes_used += o.nodes_used;
    converged = converged && o.converged;
    return *this;
  }
};

/// Evaluates the weighted integral described by spec. The piece adjacent to
/// the singular endpoint absorbs the weight into a Gauss-Jacobi rule; other
/// pieces carry the (there regular) weight factor in the integrand. Each
/// piece doubles its node count (16, 32, ..., 4096) until two successive
/// levels differ by at most its share of tol.
IntegralResult integrate_singular(const SingularIntegralSpec& spec, double tol);

/// Gauss-Legendre refinement for integrands without an endpoint weight.
/// Declared kinks split the interval so each piece sees a smooth integrand.
IntegralResult integrate_smooth(const RealFn& f, const Interval& interval, double tol,
                                const std::vector<double>& kinks = {});

/// Scales a result by c (value, error estimate).
IntegralResult scale_result(IntegralResult r, double c);

}  // namespace fracint
