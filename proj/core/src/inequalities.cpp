#include "fracint/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracint/special.hpp"

namespace fracint {

namespace {

constexpr double kBaseTol = 1e-7;  // floor of every verdict tolerance

struct OpPair {
  IntegralResult left;
  IntegralResult right;
  double sum() const { return left.value + right.value; }
  double err() const { return left.error_estimate + right.error_estimate; }
};

// ^rho I_{a+} f(b^rho) and ^rho I_{b-} f(a^rho) for power-composed f.
OpPair composed_pair(const TestFunction& f, const Interval& iv, const FracParams& params,
                     double tol) {
  OperatorRequest left;
  left.kind = OperatorKind::katugampola;
  left.side = Side::left;
  left.params = params;
  left.base_point = iv.a;
  left.eval_point = iv.b;
  left.integrand = f;
  left.tol = tol;

  OperatorRequest right = left;
  right.side = Side::right;
  right.base_point = iv.b;
  right.eval_point = iv.a;

  return {katugampola_composed(left), katugampola_composed(right)};
}

// Direct two-sided pair for an arbitrary direct-convention integrand.
OpPair direct_pair(const TestFunction& f, const Interval& iv, const FracParams& params,
                   double tol) {
  OperatorRequest left;
  left.kind = OperatorKind::katugampola;
  left.side = Side::left;
  left.params = params;
  left.base_point = iv.a;
  left.eval_point = iv.b;
  left.integrand = f;
  left.tol = tol;

  OperatorRequest right = left;
  right.side = Side::right;
  right.base_point = iv.b;
  right.eval_point = iv.a;

  return {katugampola(left), katugampola(right)};
}

double power_width(const Interval& iv, const FracParams& params) {
  return power_diff(iv.b, iv.a, params.rho);
}

// rho^alpha Gamma(alpha+1) / (2 W^alpha).
double normalizing_constant(const FracParams& params, double width_pow) {
  return std::pow(params.rho, params.alpha) * gamma_fn(params.alpha + 1.0) /
         (2.0 * std::pow(width_pow, params.alpha));
}

bool degenerate_width(double width_pow, double alpha) {
  return !(std::pow(width_pow, alpha) > 1e-300);
}

void require_cert(const TestFunction& f, Certificate c, const char* what) {
  if (!f.certificates.has(c)) {
    throw std::invalid_argument(std::string(what) + ": required certificate absent for " +
                                f.id);
  }
}

void require_deriv1(const TestFunction& f, const char* what) {
  if (!f.has_deriv1()) {
    throw std::invalid_argument(std::string(what) + ": integrand has no deriv1: " + f.id);
  }
}

InequalityVerdict make_verdict(double lhs, double mid, double rhs, double quad_error) {
  InequalityVerdict v;
  v.lhs = lhs;
  v.mid = mid;
  v.rhs = rhs;
  v.margin_left = mid - lhs;
  v.margin_right = rhs - mid;
  v.quad_error = quad_error;
  v.tol = kBaseTol + 10.0 * quad_error;
  v.pass = v.margin_left >= -v.tol && v.margin_right >= -v.tol;
  return v;
}

IdentityResidual make_residual(double left, double right, double quad_error,
                               double residual_tol) {
  IdentityResidual r;
  r.left_side = left;
  r.right_side = right;
  r.residual = std::fabs(left - right);
  r.quad_error = quad_error;
  r.tol = residual_tol;
  r.pass = r.residual <= r.tol;
  return r;
}

BoundVerdict make_bound(double quantity, double bound, double quad_error) {
  BoundVerdict b;
  b.quantity = quantity;
  b.bound = bound;
  b.slack = bound - quantity;
  b.quad_error = quad_error;
  b.tol = kBaseTol + 10.0 * quad_error;
  b.pass = b.slack >= -b.tol;
  return b;
}

// Endpoint average minus the constant-variant-weighted operator mean, the
// left side shared by the identity and all the power-composed bounds.
struct ComposedGap {
  double value = 0.0;
  double quad_error = 0.0;
};

ComposedGap composed_gap(const TestFunction& f, const Interval& iv, const FracParams& params,
                         ConstantVariant variant, double tol) {
  const double A = std::pow(iv.a, params.rho);
  const double B = std::pow(iv.b, params.rho);
  const double W = power_width(iv, params);
  double c = normalizing_constant(params, W);
  if (variant == ConstantVariant::with_alpha) c *= params.alpha;
  OpPair pair = composed_pair(f, iv, params, tol);
  ComposedGap g;
  g.value = 0.5 * (f.eval(A) + f.eval(B)) - c * pair.sum();
  g.quad_error = std::fabs(c) * pair.err();
  return g;
}

// Right side of the endpoint-average identity after s = t^rho:
// (W / 2) * [ int (1-s)^alpha f'(sA + (1-s)B) - int s^alpha f'(...) ]
// (the substitution leaves no rho: both operators reduce to the power
// kernel on [A, B], so the identity is the classical one there).
struct ComposedIdentityRhs {
  double value = 0.0;
  double quad_error = 0.0;
};

ComposedIdentityRhs composed_identity_rhs(const TestFunction& f, const Interval& iv,
                                          const FracParams& params, double tol) {
  const double A = std::pow(iv.a, params.rho);
  const double B = std::pow(iv.b, params.rho);
  const double W = B - A;
  const double alpha = params.alpha;

  SingularIntegralSpec plus;
  plus.smooth_part = [&f, A, B](double s) { return f.deriv1(s * A + (1.0 - s) * B); };
  plus.interval = Interval(0.0, 1.0);
  plus.singular_end = SingularEnd::right;
  plus.exponent = alpha;
  IntegralResult jp = integrate_singular(plus, tol);

  SingularIntegralSpec minus;  // reflected so the weight sits at the right end
  minus.smooth_part = [&f, A, B](double r) { return f.deriv1((1.0 - r) * A + r * B); };
  minus.interval = Interval(0.0, 1.0);
  minus.singular_end = SingularEnd::right;
  minus.exponent = alpha;
  IntegralResult jm = integrate_singular(minus, tol);

  const double scale = W / 2.0;
  ComposedIdentityRhs rhs;
  rhs.value = scale * (jp.value - jm.value);
  rhs.quad_error = std::fabs(scale) * (jp.error_estimate + jm.error_estimate);
  return rhs;
}

double sup_abs_refined(const RealFn& fn, double lo, double hi) {
  constexpr int kGrid = 4096;
  double best = 0.0;
  double best_x = lo;
  for (int i = 0; i <= kGrid; ++i) {
    const double x = lo + (hi - lo) * i / kGrid;
    const double v = std::fabs(fn(x));
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  // Golden-section refinement around the grid argmax.
  double l = std::max(lo, best_x - (hi - lo) / kGrid);
  double r = std::min(hi, best_x + (hi - lo) / kGrid);
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = r - kInvPhi * (r - l);
  double x2 = l + kInvPhi * (r - l);
  double f1 = std::fabs(fn(x1));
  double f2 = std::fabs(fn(x2));
  for (int i = 0; i < 40; ++i) {
    if (f1 < f2) {
      l = x1;
      x1 = x2;
      f1 = f2;
      x2 = l + kInvPhi * (r - l);
      f2 = std::fabs(fn(x2));
    } else {
      r = x2;
      x2 = x1;
      f2 = f1;
      x1 = r - kInvPhi * (r - l);
      f1 = std::fabs(fn(x1));
    }
  }
  return std::max({best, f1, f2});
}

}  // namespace

const char* constant_variant_name(ConstantVariant v) {
  return v == ConstantVariant::with_alpha ? "with-alpha" : "without-alpha";
}

// ---------------------------------------------------------------------------
// F-transform
// ---------------------------------------------------------------------------

double FTransform::eval(double x) const {
  return source.eval(x) + source.eval(interval.a + interval.b - x);
}

double FTransform::deriv1(double x) const {
  return source.deriv1(x) - source.deriv1(interval.a + interval.b - x);
}

TestFunction FTransform::as_test_function() const {
  TestFunction out;
  out.id = "F[" + source.id + "]";
  const TestFunction src = source;
  const double edge_sum = interval.a + interval.b;
  out.eval = [src, edge_sum](double x) { return src.eval(x) + src.eval(edge_sum - x); };
  if (src.has_deriv1()) {
    out.deriv1 = [src, edge_sum](double x) {
      return src.deriv1(x) - src.deriv1(edge_sum - x);
    };
  }
  if (src.certificates.has(Certificate::convex)) {
    out.certificates.add(Certificate::convex);
  }
  out.certificates.add(Certificate::symmetric_to_midpoint);
  out.convention = DomainConvention::direct;
  out.domain = interval;
  std::vector<double> kinks = src.kinks;
  for (double k : src.kinks) kinks.push_back(edge_sum - k);
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
  out.kinks = std::move(kinks);
  return out;
}

FTransform f_transform(const TestFunction& f, const Interval& interval) {
  FTransform t;
  t.source = f;
  t.interval = interval;
  return t;
}

// ---------------------------------------------------------------------------
// Power-composed suites
// ---------------------------------------------------------------------------

InequalityVerdict hh_katugampola(const TestFunction& f, const Interval& iv,
                                 const FracParams& params, double tol) {
  require_cert(f, Certificate::convex, "hh_katugampola");
  if (f.convention != DomainConvention::power_composed) {
    throw std::invalid_argument("hh_katugampola expects a power-composed integrand");
  }
  const double A = std::pow(iv.a, params.rho);
  const double B = std::pow(iv.b, params.rho);
  const double W = power_width(iv, params);
  if (degenerate_width(W, params.alpha)) {
    InequalityVerdict v;
    v.skipped = true;
    return v;
  }
  OpPair pair = composed_pair(f, iv, params, tol);
  const double c = normalizing_constant(params, W);
  return make_verdict(f.eval(0.5 * (A + B)), c * pair.sum(),
                      0.5 * (f.eval(A) + f.eval(B)), std::fabs(c) * pair.err());
}

InequalityVerdict hh_rl_baseline(const TestFunction& f, const Interval& iv, double alpha,
                                 double tol) {
  require_cert(f, Certificate::convex, "hh_rl_baseline");
  TestFunction direct = f;
  direct.convention = DomainConvention::direct;

  OperatorRequest left;
  left.kind = OperatorKind::riemann_liouville;
  left.side = Side::left;
  left.params = FracParams(alpha, 1.0);
  left.base_point = iv.a;
  left.eval_point = iv.b;
  left.integrand = direct;
  left.tol = tol;

  OperatorRequest right = left;
  right.side = Side::right;
  right.base_point = iv.b;
  right.eval_point = iv.a;

  IntegralResult l = riemann_liouville(left);
  IntegralResult r = riemann_liouville(right);
  const double c = gamma_fn(alpha + 1.0) / (2.0 * std::pow(iv.width(), alpha));
  return make_verdict(f.eval(iv.midpoint()), c * (l.value + r.value),
                      0.5 * (f.eval(iv.a) + f.eval(iv.b)),
                      c * (l.error_estimate + r.error_estimate));
}

InequalityVerdict hh_direct(const TestFunction& f, const Interval& iv,
                            const FracParams& params, double tol) {
  const double W = power_width(iv, params);
  if (degenerate_width(W, params.alpha)) {
    InequalityVerdict v;
    v.skipped = true;
    return v;
  }
  OpPair pair = direct_pair(f, iv, params, tol);
  const double c = normalizing_constant(params, W);
  return make_verdict(f.eval(iv.midpoint()), c * pair.sum(),
                      0.5 * (f.eval(iv.a) + f.eval(iv.b)), std::fabs(c) * pair.err());
}

IdentityResidual trapezoid_identity(const TestFunction& f, const Interval& iv,
                                    const FracParams& params, ConstantVariant variant,
                                    double tol, double residual_tol) {
  require_deriv1(f, "trapezoid_identity");
  if (f.convention != DomainConvention::power_composed) {
    throw std::invalid_argument("trapezoid_identity expects a power-composed integrand");
  }
  const double W = power_width(iv, params);
  if (degenerate_width(W, params.alpha)) {
    IdentityResidual r;
    r.skipped = true;
    return r;
  }
  ComposedGap gap = composed_gap(f, iv, params, variant, tol);
  ComposedIdentityRhs rhs = composed_identity_rhs(f, iv, params, tol);
  return make_residual(gap.value, rhs.value, gap.quad_error + rhs.quad_error, residual_tol);
}

ConstantResolution resolve_disputed_constant(const std::vector<ConstantSampleCase>& sample,
                                             double tol) {
  if (sample.empty()) {
    throw std::invalid_argument("resolve_disputed_constant: empty sample");
  }
  ConstantResolution res;
  for (const auto& c : sample) {
    IdentityResidual with = trapezoid_identity(c.fn, c.interval, c.params,
                                               ConstantVariant::with_alpha, 1e-11);
    IdentityResidual without = trapezoid_identity(c.fn, c.interval, c.params,
                                                  ConstantVariant::without_alpha, 1e-11);
    ConstantCaseResiduals row;
    row.label = c.fn.id;
    row.alpha = c.params.alpha;
    row.rho = c.params.rho;
    row.residual_with_alpha = with.residual;
    row.residual_without_alpha = without.residual;
    res.table.push_back(row);
    res.worst_with_alpha = std::max(res.worst_with_alpha, with.residual);
    res.worst_without_alpha = std::max(res.worst_without_alpha, without.residual);
  }
  const bool with_ok = res.worst_with_alpha <= tol;
  const bool without_ok = res.worst_without_alpha <= tol;
  if (with_ok && without_ok) {
    throw ConstantResolutionError(
        "constant resolution ambiguous: both variants satisfy the identity on this "
        "sample (degenerate sample)",
        true);
  }
  if (!with_ok && !without_ok) {
    throw ConstantResolutionError(
        "constant resolution failed: neither variant satisfies the identity "
        "(worst with-alpha " + std::to_string(res.worst_with_alpha) +
            ", worst without-alpha " + std::to_string(res.worst_without_alpha) + ")",
        false);
  }
  res.verdict = with_ok ? ConstantVariant::with_alpha : ConstantVariant::without_alpha;
  return res;
}

std::vector<ConstantSampleCase> default_constant_sample() {
  TestFunction square;
  square.id = "square";
  square.eval = [](double u) { return u * u; };
  square.deriv1 = [](double u) { return 2.0 * u; };
  square.deriv2 = [](double) { return 2.0; };
  square.certificates.add(Certificate::convex);
  square.convention = DomainConvention::power_composed;
  square.domain = Interval(0.0, 1.0);

  TestFunction expu;
  expu.id = "exp";
  expu.eval = [](double u) { return std::exp(u); };
  expu.deriv1 = [](double u) { return std::exp(u); };
  expu.deriv2 = [](double u) { return std::exp(u); };
  expu.certificates.add(Certificate::convex);
  expu.convention = DomainConvention::power_composed;
  expu.domain = Interval(0.0, 1.0);

  const Interval unit(0.0, 1.0);
  std::vector<ConstantSampleCase> sample;
  sample.push_back({square, unit, FracParams(0.5, 1.0)});
  sample.push_back({square, unit, FracParams(2.0, 1.0)});
  sample.push_back({square, unit, FracParams(0.5, 2.0)});
  sample.push_back({square, unit, FracParams(2.0, 2.0)});
  sample.push_back({expu, unit, FracParams(1.5, 2.0)});
  return sample;
}

std::vector<ConstantSampleCase> degenerate_constant_sample() {
  // Linear and centered on the power-interval midpoint: every term of the
  // identity vanishes under either constant, so resolution cannot decide.
  auto centered = [](double rho, double slope) {
    TestFunction f;
    f.id = "centered-linear";
    const double mid = 0.5 * (0.0 + 1.0);  // [a^rho, b^rho] = [0, 1] on [0, 1]
    f.eval = [mid, slope](double u) { return slope * (u - mid); };
    f.deriv1 = [slope](double) { return slope; };
    f.certificates.add(Certificate::convex);
    f.convention = DomainConvention::power_composed;
    f.domain = Interval(0.0, 1.0);
    (void)rho;
    return f;
  };
  const Interval unit(0.0, 1.0);
  std::vector<ConstantSampleCase> sample;
  sample.push_back({centered(1.0, 1.0), unit, FracParams(0.5, 1.0)});
  sample.push_back({centered(2.0, -0.7), unit, FracParams(2.0, 2.0)});
  return sample;
}

BoundVerdict second_derivative_bound(const TestFunction& f, const Interval& iv,
                                     const FracParams& params, double tol,
                                     ConstantVariant variant) {
  require_cert(f, Certificate::second_deriv_bounded, "second_derivative_bound");
  if (!f.has_deriv2()) {
    throw std::invalid_argument("second_derivative_bound: integrand has no deriv2: " + f.id);
  }
  const double A = std::pow(iv.a, params.rho);
  const double B = std::pow(iv.b, params.rho);
  const double W = power_width(iv, params);
  const double alpha = params.alpha;
  if (degenerate_width(W, alpha)) {
    BoundVerdict b;
    b.skipped = true;
    return b;
  }
  ComposedGap gap = composed_gap(f, iv, params, variant, tol);
  const double sup = sup_abs_refined(f.deriv2, A, B);
  const double bound = W * W / (2.0 * (alpha + 1.0) * (alpha + 2.0)) *
                       (alpha + std::pow(2.0, -alpha)) * sup;
  return make_bound(std::fabs(gap.value), bound, gap.quad_error);
}

BoundVerdict first_derivative_bound(const TestFunction& f, const Interval& iv,
                                    const FracParams& params, double tol,
                                    ConstantVariant variant) {
  require_cert(f, Certificate::abs_deriv_convex, "first_derivative_bound");
  require_deriv1(f, "first_derivative_bound");
  const double A = std::pow(iv.a, params.rho);
  const double B = std::pow(iv.b, params.rho);
  const double W = power_width(iv, params);
  const double alpha = params.alpha;
  if (degenerate_width(W, alpha)) {
    BoundVerdict b;
    b.skipped = true;
    return b;
  }
  ComposedGap gap = composed_gap(f, iv, params, variant, tol);
  const double bound =
      W / (2.0 * (alpha + 1.0)) * (std::fabs(f.deriv1(A)) + std::fabs(f.deriv1(B)));
  return make_bound(std::fabs(gap.value), bound, gap.quad_error);
}

BoundVerdict strict_derivative_bound(const TestFunction& f, const Interval& iv,
                                     const FracParams& params, double tol,
                                     ConstantVariant variant) {
  require_cert(f, Certificate::abs_deriv_convex, "strict_derivative_bound");
  require_deriv1(f, "strict_derivative_bound");
  const double A = std::pow(iv.a, params.rho);
  const double B = std::pow(iv.b, params.rho);
  const double W = power_width(iv, params);
  const double alpha = params.alpha;
  if (degenerate_width(W, alpha)) {
    BoundVerdict b;
    b.skipped = true;
    return b;
  }
  ComposedGap gap = composed_gap(f, iv, params, variant, tol);
  const double bound = W * (1.0 - std::pow(2.0, -alpha)) / (2.0 * (alpha + 1.0)) *
                       (std::fabs(f.deriv1(A)) + std::fabs(f.deriv1(B)));
  return make_bound(std::fabs(gap.value), bound, gap.quad_error);
}

// ---------------------------------------------------------------------------
// Direct suites
// ---------------------------------------------------------------------------

double kernel_K(double t, const Interval& iv, const FracParams& params) {
  if (t < 0.0 || t > 1.0) throw std::domain_error("kernel_K: t must lie in [0, 1]");
  const double u = (1.0 - t) * iv.a + t * iv.b;
  const double rho = params.rho;
  const double alpha = params.alpha;
  const double first = (u > iv.a) ? std::pow(power_diff(u, iv.a, rho), alpha) : 0.0;
  const double second = (u < iv.b) ? std::pow(power_diff(iv.b, u, rho), alpha) : 0.0;
  return first - second;
}

double kernel_K_zero(const Interval& iv, const FracParams& params) {
  const double rho = params.rho;
  const double target = 0.5 * (std::pow(iv.a, rho) + std::pow(iv.b, rho));
  const double u_star = std::pow(target, 1.0 / rho);
  return (u_star - iv.a) / (iv.b - iv.a);
}

IntegralResult abs_kernel_K_integral(const Interval& iv, const FracParams& params,
                                     double tol) {
  const double rho = params.rho;
  const double alpha = params.alpha;
  const double a = iv.a;
  const double b = iv.b;
  const double t_star = kernel_K_zero(iv, params);
  const double u_star = a + t_star * (b - a);
  const double piece_tol = tol / 4.0 * (b - a);

  // Each of the four pieces has its fractional endpoint factor absorbed into
  // the rule weights; the complementary factor is regular on that piece.
  auto near_lower = [&](double lo, double hi) {  // int (u^rho - a^rho)^alpha
    SingularIntegralSpec s;
    s.interval = Interval(lo, hi);
    s.singular_end = SingularEnd::left;
    if (a == 0.0) {
      s.exponent = rho * alpha;
      s.smooth_part = [](double) { return 1.0; };
    } else {
      s.exponent = alpha;
      s.smooth_part = [=](double u) { return power_diff_ratio(u, a, rho, alpha); };
    }
    return integrate_singular(s, piece_tol);
  };
  auto near_upper = [&](double lo, double hi) {  // int (b^rho - u^rho)^alpha
    SingularIntegralSpec s;
    s.interval = Interval(lo, hi);
    s.singular_end = SingularEnd::right;
    s.exponent = alpha;
    s.smooth_part = [=](double u) { return power_diff_ratio(b, u, rho, alpha); };
    return integrate_singular(s, piece_tol);
  };
  auto smooth_lower = [&](double lo, double hi) {  // same integrand, far from a
    return integrate_smooth([=](double u) { return std::pow(power_diff(u, a, rho), alpha); },
                            Interval(lo, hi), piece_tol);
  };
  auto smooth_upper = [&](double lo, double hi) {  // far from b
    return integrate_smooth([=](double u) { return std::pow(power_diff(b, u, rho), alpha); },
                            Interval(lo, hi), piece_tol);
  };

  IntegralResult a1 = smooth_upper(a, u_star);   // (b^rho-u^rho)^alpha on [a, u*]
  IntegralResult a2 = near_lower(a, u_star);     // (u^rho-a^rho)^alpha on [a, u*]
  IntegralResult a3 = smooth_lower(u_star, b);   // (u^rho-a^rho)^alpha on [u*, b]
  IntegralResult a4 = near_upper(u_star, b);     // (b^rho-u^rho)^alpha on [u*, b]

  IntegralResult out;
  out.value = (a1.value - a2.value + a3.value - a4.value) / (b - a);
  out.error_estimate = (a1.error_estimate + a2.error_estimate + a3.error_estimate +
                        a4.error_estimate) /
                       (b - a);
  out.nodes_used = a1.nodes_used + a2.nodes_used + a3.nodes_used + a4.nodes_used;
  out.converged = a1.converged && a2.converged && a3.converged && a4.converged;
  return out;
}

double kernel_G(double s, const Interval& iv, const FracParams& params) {
  if (!(s > iv.a && s < iv.b)) throw std::domain_error("kernel_G: s must lie in (a, b)");
  const double rho = params.rho;
  const double am1 = params.alpha - 1.0;
  return std::pow(s, rho - 1.0) * (std::pow(power_diff(iv.b, s, rho), am1) +
                                   std::pow(power_diff(s, iv.a, rho), am1));
}

namespace {

// (F(a)+F(b))/2 - C0 * two-sided mean of F: the left side shared by
// identity_f and the derivative bound.
struct DirectGap {
  double value = 0.0;
  double quad_error = 0.0;
  double width_pow = 0.0;
};

DirectGap direct_gap(const FTransform& F, const Interval& iv, const FracParams& params,
                     double tol) {
  OpPair pair = direct_pair(F.as_test_function(), iv, params, tol);
  const double W = power_diff(iv.b, iv.a, params.rho);
  const double c = normalizing_constant(params, W);
  DirectGap g;
  g.width_pow = W;
  g.value = 0.5 * (F.eval(iv.a) + F.eval(iv.b)) - c * pair.sum();
  g.quad_error = std::fabs(c) * pair.err();
  return g;
}

// Integral of K(t) F'((1-t)a + tb) dt over [0, 1], evaluated in u-space as
// two endpoint-weighted integrals (no interior kink: the kernel's sign
// change needs no split when the absolute value is absent).
struct KernelDot {
  double value = 0.0;
  double quad_error = 0.0;
};

KernelDot kernel_dot_deriv(const FTransform& F, const Interval& iv, const FracParams& params,
                           double tol) {
  const double a = iv.a;
  const double b = iv.b;
  const double rho = params.rho;
  const double alpha = params.alpha;
  const double scale = 1.0 / (b - a);

  SingularIntegralSpec p1;  // (u^rho - a^rho)^alpha F'(u)
  p1.interval = iv;
  p1.singular_end = SingularEnd::left;
  if (a == 0.0) {
    p1.exponent = rho * alpha;
    p1.smooth_part = [&F](double u) { return F.deriv1(u); };
  } else {
    p1.exponent = alpha;
    p1.smooth_part = [&F, a, rho, alpha](double u) {
      return power_diff_ratio(u, a, rho, alpha) * F.deriv1(u);
    };
  }
  IntegralResult r1 = integrate_singular(p1, tol);

  SingularIntegralSpec p2;  // (b^rho - u^rho)^alpha F'(u)
  p2.interval = iv;
  p2.singular_end = SingularEnd::right;
  p2.exponent = alpha;
  p2.smooth_part = [&F, b, rho, alpha](double u) {
    return power_diff_ratio(b, u, rho, alpha) * F.deriv1(u);
  };
  IntegralResult r2 = integrate_singular(p2, tol);

  KernelDot out;
  out.value = scale * (r1.value - r2.value);
  out.quad_error = scale * (r1.error_estimate + r2.error_estimate);
  return out;
}

}  // namespace

InequalityVerdict hh_f(const TestFunction& f, const Interval& iv, const FracParams& params,
                       double tol) {
  require_cert(f, Certificate::convex, "hh_f");
  if (f.convention != DomainConvention::direct) {
    throw std::invalid_argument("hh_f expects a direct-convention integrand");
  }
  const double W = power_width(iv, params);
  if (degenerate_width(W, params.alpha)) {
    InequalityVerdict v;
    v.skipped = true;
    return v;
  }
  FTransform F = f_transform(f, iv);
  OpPair pair = direct_pair(F.as_test_function(), iv, params, tol);
  const double c = normalizing_constant(params, W);
  return make_verdict(F.eval(iv.midpoint()), c * pair.sum(),
                      0.5 * (F.eval(iv.a) + F.eval(iv.b)), std::fabs(c) * pair.err());
}

IdentityResidual identity_f(const TestFunction& f, const Interval& iv,
                            const FracParams& params, double tol, double residual_tol) {
  require_deriv1(f, "identity_f");
  if (f.convention != DomainConvention::direct) {
    throw std::invalid_argument("identity_f expects a direct-convention integrand");
  }
  const double W = power_width(iv, params);
  if (degenerate_width(W, params.alpha)) {
    IdentityResidual r;
    r.skipped = true;
    return r;
  }
  FTransform F = f_transform(f, iv);
  DirectGap gap = direct_gap(F, iv, params, tol);
  KernelDot dot = kernel_dot_deriv(F, iv, params, tol);
  const double rhs_scale = (iv.b - iv.a) / (2.0 * std::pow(W, params.alpha));
  return make_residual(gap.value, rhs_scale * dot.value,
                       gap.quad_error + rhs_scale * dot.quad_error, residual_tol);
}

BoundVerdict hh_f_derivative_bound(const TestFunction& f, const Interval& iv,
                                   const FracParams& params, double tol) {
  require_cert(f, Certificate::abs_deriv_convex, "hh_f_derivative_bound");
  require_deriv1(f, "hh_f_derivative_bound");
  const double W = power_width(iv, params);
  if (degenerate_width(W, params.alpha)) {
    BoundVerdict b;
    b.skipped = true;
    return b;
  }
  FTransform F = f_transform(f, iv);
  DirectGap gap = direct_gap(F, iv, params, tol);
  IntegralResult ik = abs_kernel_K_integral(iv, params, tol);
  const double scale = (iv.b - iv.a) / (2.0 * std::pow(W, params.alpha));
  const double dsum = std::fabs(f.deriv1(iv.a)) + std::fabs(f.deriv1(iv.b));
  return make_bound(std::fabs(gap.value), scale * ik.value * dsum,
                    gap.quad_error + scale * ik.error_estimate * dsum);
}

namespace {

TestFunction weight_as_function(const WeightFunction& g) {
  TestFunction t;
  t.id = "g[" + g.id + "]";
  const RealFn ev = g.eval;
  t.eval = ev;
  t.convention = DomainConvention::direct;
  t.domain = g.domain;
  return t;
}

TestFunction product_function(const WeightFunction& g, const TestFunction& F) {
  TestFunction t;
  t.id = "g*" + F.id;
  const RealFn ge = g.eval;
  const RealFn fe = F.eval;
  t.eval = [ge, fe](double x) { return ge(x) * fe(x); };
  t.convention = DomainConvention::direct;
  t.domain = F.domain;
  t.kinks = F.kinks;
  return t;
}

}  // namespace

InequalityVerdict fejer_f(const TestFunction& f, const WeightFunction& g,
                          const Interval& iv, const FracParams& params, double tol) {
  require_cert(f, Certificate::convex, "fejer_f");
  check_weight(g);
  const double W = power_width(iv, params);
  if (degenerate_width(W, params.alpha)) {
    InequalityVerdict v;
    v.skipped = true;
    return v;
  }
  FTransform F = f_transform(f, iv);
  TestFunction Ftf = F.as_test_function();
  OpPair sg = direct_pair(weight_as_function(g), iv, params, tol);
  OpPair gf = direct_pair(product_function(g, Ftf), iv, params, tol);
  const double fm = F.eval(iv.midpoint());
  const double fe = 0.5 * (F.eval(iv.a) + F.eval(iv.b));
  const double err = gf.err() + std::max(std::fabs(fm), std::fabs(fe)) * sg.err();
  return make_verdict(fm * sg.sum(), gf.sum(), fe * sg.sum(), err);
}

IdentityResidual fejer_identity(const TestFunction& f, const WeightFunction& g,
                                const Interval& iv, const FracParams& params, double tol,
                                double residual_tol) {
  require_deriv1(f, "fejer_identity");
  check_weight(g);
  const double W = power_width(iv, params);
  const double alpha = params.alpha;
  const double rho = params.rho;
  if (degenerate_width(W, alpha)) {
    IdentityResidual r;
    r.skipped = true;
    return r;
  }

  FTransform F = f_transform(f, iv);
  TestFunction Ftf = F.as_test_function();
  OpPair sg = direct_pair(weight_as_function(g), iv, params, tol);
  OpPair gf = direct_pair(product_function(g, Ftf), iv, params, tol);
  const double fe = 0.5 * (F.eval(iv.a) + F.eval(iv.b));
  const double left = fe * sg.sum() - gf.sum();
  const double left_err = gf.err() + std::fabs(fe) * sg.err();

  // Right side: nested double integral. The weighted cumulative
  // int_a^t G g is assembled from endpoint-anchored pieces in the original
  // variable, each with its fractional factor absorbed into the rule:
  //   int_a^t s^(rho-1)(s^rho-a^rho)^(alpha-1) g ds        (anchored at a)
  //   int_t^b s^(rho-1)(b^rho-s^rho)^(alpha-1) g ds        (anchored at b)
  const double outer_tol = std::max(tol, 1e-8);
  const double inner_tol = outer_tol / (10.0 * iv.width());
  const double a = iv.a;
  const double b = iv.b;

  // rho >= 1 keeps s^(rho-1) regular and stays in s; rho < 1 substitutes
  // v = s^rho, which removes it (and the root composition v^(1/rho) is
  // smooth there). Mirrors the operator evaluation routing.
  const bool in_s_space = rho >= 1.0;
  const double A = std::pow(a, rho);
  const double B = std::pow(b, rho);
  const double inv_rho = 1.0 / rho;

  auto lower_piece = [&](double s_hi) {  // int_a^{s_hi} of the a-anchored term
    SingularIntegralSpec spec;
    spec.singular_end = SingularEnd::left;
    if (in_s_space) {
      spec.interval = Interval(a, s_hi);
      if (a == 0.0) {
        spec.exponent = rho * alpha - 1.0;
        spec.smooth_part = [&g](double s) { return g.eval(s); };
      } else {
        spec.exponent = alpha - 1.0;
        spec.smooth_part = [&g, a, rho, alpha](double s) {
          return std::pow(s, rho - 1.0) * power_diff_ratio(s, a, rho, alpha - 1.0) *
                 g.eval(s);
        };
      }
      return scale_result(integrate_singular(spec, inner_tol), 1.0);
    }
    spec.interval = Interval(A, std::pow(s_hi, rho));
    spec.exponent = alpha - 1.0;
    spec.smooth_part = [&g, inv_rho](double v) { return g.eval(std::pow(v, inv_rho)); };
    return scale_result(integrate_singular(spec, inner_tol * rho), 1.0 / rho);
  };
  auto upper_piece = [&](double s_lo) {  // int_{s_lo}^b of the b-anchored term
    SingularIntegralSpec spec;
    spec.singular_end = SingularEnd::right;
    if (in_s_space) {
      spec.interval = Interval(s_lo, b);
      spec.exponent = alpha - 1.0;
      spec.smooth_part = [&g, b, rho, alpha](double s) {
        return std::pow(s, rho - 1.0) * power_diff_ratio(b, s, rho, alpha - 1.0) *
               g.eval(s);
      };
      return scale_result(integrate_singular(spec, inner_tol), 1.0);
    }
    spec.interval = Interval(std::pow(s_lo, rho), B);
    spec.exponent = alpha - 1.0;
    spec.smooth_part = [&g, inv_rho](double v) { return g.eval(std::pow(v, inv_rho)); };
    return scale_result(integrate_singular(spec, inner_tol * rho), 1.0 / rho);
  };

  const double upper_total = upper_piece(a).value;  // int_a^b of the b-anchored term
  const double lower_total = lower_piece(b).value;  // int_a^b of the a-anchored term

  // cum(t) = lower_piece(t) + (upper_total - upper_piece(t));
  // inner(t) = 2 cum(t) - (lower_total + upper_total).
  auto inner = [&](double t) {
    const double c2 = (t > a) ? lower_piece(t).value : 0.0;
    const double c1c = (t < b) ? upper_piece(t).value : 0.0;
    return 2.0 * c2 - 2.0 * c1c + upper_total - lower_total;
  };

  // The outer integrand is only Hoelder at the endpoints (the cumulative's
  // derivative behaves like the endpoint-singular kernel there); graded
  // splits near both ends restore fast composite convergence.
  std::vector<double> outer_splits = Ftf.kinks;
  for (double eps : {1e-5, 1e-3, 3e-2}) {
    outer_splits.push_back(a + iv.width() * eps);
    outer_splits.push_back(b - iv.width() * eps);
  }
  IntegralResult outer = integrate_smooth(
      [&](double t) { return inner(t) * F.deriv1(t); }, iv, outer_tol, outer_splits);
  const double pref = std::pow(rho, 1.0 - alpha) / (2.0 * gamma_fn(alpha));
  const double right = pref * outer.value;
  const double right_err =
      pref * (outer.error_estimate + 3.0 * inner_tol * iv.width());
  return make_residual(left, right, left_err + right_err, residual_tol);
}

BoundVerdict fejer_bound(const TestFunction& f, const WeightFunction& g,
                         const Interval& iv, const FracParams& params, double tol) {
  require_cert(f, Certificate::abs_deriv_convex, "fejer_bound");
  require_deriv1(f, "fejer_bound");
  check_weight(g);
  const double W = power_width(iv, params);
  const double alpha = params.alpha;
  if (degenerate_width(W, alpha)) {
    BoundVerdict b;
    b.skipped = true;
    return b;
  }
  FTransform F = f_transform(f, iv);
  TestFunction Ftf = F.as_test_function();
  OpPair sg = direct_pair(weight_as_function(g), iv, params, tol);
  OpPair gf = direct_pair(product_function(g, Ftf), iv, params, tol);
  const double fe = 0.5 * (F.eval(iv.a) + F.eval(iv.b));
  const double quantity = std::fabs(fe * sg.sum() - gf.sum());
  const double q_err = gf.err() + std::fabs(fe) * sg.err();

  IntegralResult ik = abs_kernel_K_integral(iv, params, tol);
  const double dsum = std::fabs(f.deriv1(iv.a)) + std::fabs(f.deriv1(iv.b));
  const double scale = iv.width() * g.sup_norm /
                       (std::pow(params.rho, alpha) * gamma_fn(alpha + 1.0));
  return make_bound(quantity, scale * dsum * ik.value,
                    q_err + scale * dsum * ik.error_estimate);
}

}  // namespace fracint
