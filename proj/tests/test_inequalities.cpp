#include <cmath>
#include <doctest.h>

#include "fracint/corpus.hpp"
#include "fracint/inequalities.hpp"
#include "fracint/oracle.hpp"
#include "fracint/special.hpp"
#include "test_helpers.hpp"

using namespace fracint;
using namespace testutil;

TEST_SUITE_BEGIN("inequalities");

namespace {

TestFunction composed(TestFunction f) {
  f.convention = DomainConvention::power_composed;
  return f;
}

// Independent oracle evaluation of the power-composed two-sided mean, built
// on brute force instead of the rule path.
double brute_composed_mean(const TestFunction& f, const Interval& iv,
                           const FracParams& params, long n = 200000) {
  auto left = request(OperatorKind::katugampola, Side::left, params.alpha, params.rho,
                      iv.a, iv.b, f);
  auto right = request(OperatorKind::katugampola, Side::right, params.alpha, params.rho,
                       iv.b, iv.a, f);
  const double w = power_diff(iv.b, iv.a, params.rho);
  const double c = std::pow(params.rho, params.alpha) * gamma_fn(params.alpha + 1.0) /
                   (2.0 * std::pow(w, params.alpha));
  return c * (brute_force(left, n) + brute_force(right, n));
}

const Interval kUnit(0.0, 1.0);

}  // namespace

TEST_CASE("hh_katugampola collapses for constants and linear functions") {
  for (double rho : {0.5, 1.0, 2.0}) {
    for (double alpha : {0.5, 1.0, 2.0}) {
      const FracParams params(alpha, rho);
      auto vc = hh_katugampola(composed(constant(2.0)), Interval(1.0, 2.0), params, 1e-11);
      CHECK(vc.pass);
      CHECK(vc.lhs == doctest::Approx(2.0).epsilon(1e-10));
      CHECK(vc.mid == doctest::Approx(2.0).epsilon(1e-10));
      CHECK(vc.rhs == doctest::Approx(2.0).epsilon(1e-10));

      auto vl = hh_katugampola(composed(identity_fn()), Interval(1.0, 2.0), params, 1e-11);
      const double expected =
          0.5 * (std::pow(1.0, rho) + std::pow(2.0, rho));
      CHECK(vl.pass);
      CHECK(vl.lhs == doctest::Approx(expected).epsilon(1e-10));
      CHECK(vl.mid == doctest::Approx(expected).epsilon(1e-9));
      CHECK(vl.rhs == doctest::Approx(expected).epsilon(1e-10));
      CHECK(std::fabs(vl.margin_left) <= 1e-8);
      CHECK(std::fabs(vl.margin_right) <= 1e-8);
    }
  }
}

TEST_CASE("hh_katugampola classical square case") {
  auto v = hh_katugampola(composed(square_fn()), kUnit, FracParams(1.0, 1.0), 1e-12);
  CHECK(v.lhs == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(v.mid == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
  CHECK(v.rhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(v.pass);
}

TEST_CASE("hh_katugampola requires a convexity certificate and the composed tag") {
  TestFunction untagged = composed(constant(1.0));
  untagged.certificates = CertSet{};
  CHECK_THROWS_AS(hh_katugampola(untagged, kUnit, FracParams(0.5, 1.0), 1e-10),
                  std::invalid_argument);
  CHECK_THROWS_AS(hh_katugampola(constant(1.0), kUnit, FracParams(0.5, 1.0), 1e-10),
                  std::invalid_argument);
}

TEST_CASE("hh_rl_baseline equals the rho = 1 suite and brute force") {
  for (const TestFunction& f : {square_fn(), exp_fn()}) {
    for (double alpha : {0.5, 1.5}) {
      const double tol = 1e-11;
      auto base = hh_rl_baseline(composed(f), kUnit, alpha, tol);
      auto kat = hh_katugampola(composed(f), kUnit, FracParams(alpha, 1.0), tol);
      CHECK(std::fabs(base.lhs - kat.lhs) <= 2.0 * tol);
      CHECK(std::fabs(base.mid - kat.mid) <= 2.0 * tol);
      CHECK(std::fabs(base.rhs - kat.rhs) <= 2.0 * tol);
      CHECK(base.pass);
      CHECK(std::fabs(base.mid -
                      brute_composed_mean(composed(f), kUnit, FracParams(alpha, 1.0))) <=
            1e-6);
    }
  }
  auto x2 = hh_rl_baseline(composed(square_fn()), kUnit, 1.0, 1e-12);
  CHECK(x2.lhs == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(x2.mid == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
  CHECK(x2.rhs == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("trapezoid identity: linear collapse and the square witness") {
  // linear functions satisfy the identity with zero on both sides
  auto lin = trapezoid_identity(composed(identity_fn()), kUnit, FracParams(0.5, 1.0),
                                ConstantVariant::without_alpha, 1e-12);
  CHECK(lin.residual <= 1e-12);
  CHECK(std::fabs(lin.left_side) <= 1e-11);
  CHECK(lin.pass);

  // the square separates the two constants at alpha = 2
  auto without = trapezoid_identity(composed(square_fn()), kUnit, FracParams(2.0, 1.0),
                                    ConstantVariant::without_alpha, 1e-12);
  auto with = trapezoid_identity(composed(square_fn()), kUnit, FracParams(2.0, 1.0),
                                 ConstantVariant::with_alpha, 1e-12);
  CHECK(without.residual <= 1e-8);
  CHECK(without.left_side == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  CHECK(with.residual == doctest::Approx(1.0 / 3.0).epsilon(1e-8));

  // rho = 2 linear case from the sweep grid
  auto r2 = trapezoid_identity(composed(identity_fn()), kUnit, FracParams(0.5, 2.0),
                               ConstantVariant::without_alpha, 1e-12);
  CHECK(r2.residual <= 1e-7);
}

TEST_CASE("trapezoid identity left side against the brute oracle") {
  const FracParams params(1.5, 2.0);
  auto r = trapezoid_identity(composed(exp_fn()), kUnit, params,
                              ConstantVariant::without_alpha, 1e-11);
  const double brute_left =
      0.5 * (std::exp(0.0) + std::exp(1.0)) - brute_composed_mean(composed(exp_fn()), kUnit, params);
  CHECK(std::fabs(r.left_side - brute_left) <= 1e-6);
  CHECK(r.residual <= 1e-8);
}

TEST_CASE("constant resolution returns without-alpha and is seed-stable") {
  auto res = resolve_disputed_constant(default_constant_sample(), 1e-7);
  CHECK(res.verdict == ConstantVariant::without_alpha);
  CHECK(res.worst_without_alpha <= 1e-9);
  CHECK(res.worst_with_alpha > 0.1);

  // corpus-drawn samples across seeds give the same verdict
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    CorpusSpec spec;
    spec.families = {Family::quadratic, Family::exponential};
    spec.count_per_family = 1;
    spec.seed = seed;
    spec.interval = kUnit;
    auto sample = default_constant_sample();
    for (TestFunction& f : generate_convex(spec)) {
      sample.push_back({as_power_composed(std::move(f)), kUnit, FracParams(0.5, 1.0)});
    }
    CHECK(resolve_disputed_constant(sample, 1e-7).verdict ==
          ConstantVariant::without_alpha);
  }
}

TEST_CASE("constant resolution fails loudly on a degenerate sample") {
  CHECK_THROWS_AS(resolve_disputed_constant(degenerate_constant_sample(), 1e-7),
                  ConstantResolutionError);
  try {
    resolve_disputed_constant(degenerate_constant_sample(), 1e-7);
  } catch (const ConstantResolutionError& e) {
    CHECK(e.ambiguous);
  }
  CHECK_THROWS_AS(resolve_disputed_constant({}, 1e-7), std::invalid_argument);
}

TEST_CASE("second derivative bound: exact square case and corpus member") {
  auto sq = second_derivative_bound(composed(square_fn()), kUnit, FracParams(1.0, 1.0),
                                    1e-12);
  CHECK(sq.quantity == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  CHECK(sq.bound == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(sq.pass);

  auto lin = second_derivative_bound(composed(identity_fn()), kUnit, FracParams(1.0, 1.0),
                                     1e-12);
  CHECK(lin.quantity <= 1e-10);
  CHECK(lin.bound == doctest::Approx(0.0));
  CHECK(lin.pass);

  const FracParams params(0.5, 2.0);
  auto ex = second_derivative_bound(composed(exp_fn()), kUnit, params, 1e-11);
  CHECK(ex.pass);
  CHECK(ex.slack > 0.0);
  const double brute_quantity = std::fabs(
      0.5 * (1.0 + std::exp(1.0)) - brute_composed_mean(composed(exp_fn()), kUnit, params));
  CHECK(ex.quantity == doctest::Approx(brute_quantity).epsilon(1e-5));
}

TEST_CASE("first derivative bound") {
  auto sq = first_derivative_bound(composed(square_fn()), kUnit, FracParams(1.0, 1.0),
                                   1e-12);
  CHECK(sq.quantity == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  CHECK(sq.bound == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sq.pass);

  // quadratic member at the fractional grid point
  CorpusSpec spec;
  spec.families = {Family::quadratic};
  spec.count_per_family = 1;
  spec.seed = 11;
  spec.interval = kUnit;
  TestFunction q = as_power_composed(generate_convex(spec).front());
  auto v = first_derivative_bound(q, kUnit, FracParams(1.5, 0.5), 1e-11);
  CHECK(v.pass);
}

TEST_CASE("strict derivative bound and its relation to the first bound") {
  auto sq = strict_derivative_bound(composed(square_fn()), kUnit, FracParams(1.0, 1.0),
                                    1e-12);
  CHECK(sq.quantity == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  CHECK(sq.bound == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(sq.pass);

  // at rho = 1 the bound is the classical kernel-split endpoint bound
  for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
    auto v = strict_derivative_bound(composed(square_fn()), kUnit, FracParams(alpha, 1.0),
                                     1e-11);
    const double classical = (1.0 - std::pow(2.0, -alpha)) / (2.0 * (alpha + 1.0)) *
                             (std::fabs(0.0) + std::fabs(2.0));
    CHECK(v.bound == doctest::Approx(classical).epsilon(1e-13));
    CHECK(v.pass);
  }

  // strict <= first whenever (1 - 2^-alpha)/rho <= 1 (it holds for all the
  // grid cells below)
  for (double alpha : {0.25, 1.0, 3.0}) {
    for (double rho : {0.5, 1.0, 5.0}) {
      if ((1.0 - std::pow(2.0, -alpha)) / rho > 1.0) continue;
      const FracParams params(alpha, rho);
      auto strict = strict_derivative_bound(composed(exp_fn()), kUnit, params, 1e-10);
      auto first = first_derivative_bound(composed(exp_fn()), kUnit, params, 1e-10);
      CHECK(strict.bound <= first.bound + 1e-12);
      CHECK(strict.pass);
      CHECK(first.pass);
    }
  }
}

TEST_CASE("bound suites demand their certificates") {
  TestFunction no_deriv = composed(constant(1.0));
  no_deriv.deriv1 = nullptr;
  no_deriv.deriv2 = nullptr;
  CHECK_THROWS_AS(
      second_derivative_bound(no_deriv, kUnit, FracParams(0.5, 1.0), 1e-10),
      std::invalid_argument);
  TestFunction no_cert = composed(square_fn());
  no_cert.certificates = CertSet{};
  no_cert.certificates.add(Certificate::convex);
  CHECK_THROWS_AS(first_derivative_bound(no_cert, kUnit, FracParams(0.5, 1.0), 1e-10),
                  std::invalid_argument);
}

TEST_CASE("f-transform bullets") {
  const Interval iv(1.0, 2.0);
  TestFunction f = exp_fn();
  FTransform F = f_transform(f, iv);
  // symmetry, endpoints, midpoint at sampled x
  const double edge = f.eval(iv.a) + f.eval(iv.b);
  for (int i = 0; i <= 64; ++i) {
    const double x = iv.a + iv.width() * i / 64.0;
    CHECK(F.eval(x) ==
          doctest::Approx(F.eval(iv.a + iv.b - x)).epsilon(1e-12));
  }
  CHECK(F.eval(iv.a) == doctest::Approx(edge).epsilon(1e-12));
  CHECK(F.eval(iv.b) == doctest::Approx(edge).epsilon(1e-12));
  CHECK(F.eval(iv.midpoint()) ==
        doctest::Approx(2.0 * f.eval(iv.midpoint())).epsilon(1e-12));

  // linear source: F is constant
  FTransform Flin = f_transform(identity_fn(), iv);
  for (int i = 0; i <= 16; ++i) {
    const double x = iv.a + iv.width() * i / 16.0;
    CHECK(Flin.eval(x) == doctest::Approx(3.0).epsilon(1e-13));
  }

  // square on [0, 1]: F(1/2) = 1/2
  FTransform Fsq = f_transform(square_fn(), kUnit);
  CHECK(Fsq.eval(0.5) == doctest::Approx(0.5).epsilon(1e-13));

  // symmetric source: F = 2f pointwise
  TestFunction sym;
  sym.id = "sym";
  sym.eval = [](double x) { return (x - 1.5) * (x - 1.5); };
  sym.domain = iv;
  FTransform Fsym = f_transform(sym, iv);
  for (int i = 0; i <= 16; ++i) {
    const double x = iv.a + iv.width() * i / 16.0;
    CHECK(Fsym.eval(x) == doctest::Approx(2.0 * sym.eval(x)).epsilon(1e-12));
  }

  // the view used by operators carries the symmetric certificate
  TestFunction view = F.as_test_function();
  CHECK(view.certificates.has(Certificate::symmetric_to_midpoint));
  CHECK(view.certificates.has(Certificate::convex));
}

TEST_CASE("hh_f: linear collapse and the symmetric reduction") {
  const Interval iv(1.0, 2.0);
  auto lin = hh_f(identity_fn(), iv, FracParams(0.75, 2.0), 1e-11);
  CHECK(lin.lhs == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(lin.mid == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(lin.rhs == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(lin.pass);

  // symmetric f: the F-chain is twice the plain direct chain
  TestFunction sym;
  sym.id = "sym";
  sym.eval = [](double x) { return (x - 1.5) * (x - 1.5) + 0.3; };
  sym.deriv1 = [](double x) { return 2.0 * (x - 1.5); };
  sym.certificates.add(Certificate::convex).add(Certificate::symmetric_to_midpoint);
  sym.domain = iv;
  const double tol = 1e-11;
  auto chain = hh_f(sym, iv, FracParams(0.5, 2.0), tol);
  auto direct = hh_direct(sym, iv, FracParams(0.5, 2.0), tol);
  CHECK(std::fabs(chain.lhs - 2.0 * direct.lhs) <= 2.0 * tol);
  CHECK(std::fabs(chain.mid - 2.0 * direct.mid) <= 1e-9);
  CHECK(std::fabs(chain.rhs - 2.0 * direct.rhs) <= 2.0 * tol);
}

TEST_CASE("hh_f margins are nonnegative on a brute-checked case") {
  const Interval iv(1.0, 2.0);
  const FracParams params(0.5, 2.0);
  auto v = hh_f(square_fn(), iv, params, 1e-11);
  CHECK(v.pass);
  CHECK(v.margin_left >= 0.0);
  CHECK(v.margin_right >= 0.0);

  // brute-force the two-sided mean of F
  FTransform F = f_transform(square_fn(), iv);
  TestFunction Ftf = F.as_test_function();
  auto left = request(OperatorKind::katugampola, Side::left, 0.5, 2.0, 1.0, 2.0, Ftf);
  auto right = request(OperatorKind::katugampola, Side::right, 0.5, 2.0, 2.0, 1.0, Ftf);
  const double w = power_diff(2.0, 1.0, 2.0);
  const double c = std::pow(2.0, 0.5) * gamma_fn(1.5) / (2.0 * std::pow(w, 0.5));
  const double brute_mid = c * (brute_force(left, 200000) + brute_force(right, 200000));
  CHECK(v.mid == doctest::Approx(brute_mid).epsilon(1e-6));
}

TEST_CASE("kernel K endpoints, zero, and the rho = 1 algebra") {
  const Interval iv(1.0, 2.0);
  const FracParams params(0.75, 2.5);
  const double w = std::pow(2.0, 2.5) - 1.0;
  CHECK(kernel_K(0.0, iv, params) == doctest::Approx(-std::pow(w, 0.75)).epsilon(1e-13));
  CHECK(kernel_K(1.0, iv, params) == doctest::Approx(std::pow(w, 0.75)).epsilon(1e-13));
  const double t_star = kernel_K_zero(iv, params);
  CHECK(t_star > 0.0);
  CHECK(t_star < 1.0);
  CHECK(std::fabs(kernel_K(t_star, iv, params)) <= 1e-10);
  CHECK_THROWS_AS(kernel_K(1.5, iv, params), std::domain_error);

  const FracParams r1(0.6, 1.0);
  for (double t : {0.1, 0.35, 0.8}) {
    const double expected = std::pow(1.0, 0.6) * (std::pow(t, 0.6) - std::pow(1.0 - t, 0.6));
    CHECK(kernel_K(t, kUnit, r1) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(kernel_K_zero(kUnit, r1) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("abs kernel integral closed form at rho = 1") {
  for (const Interval iv : {kUnit, Interval(1.0, 2.0)}) {
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
      auto ik = abs_kernel_K_integral(iv, FracParams(alpha, 1.0), 1e-12);
      const double closed = 2.0 * std::pow(iv.width(), alpha) *
                            (1.0 - std::pow(2.0, -alpha)) / (alpha + 1.0);
      CHECK(std::fabs(ik.value - closed) <= 1e-9 * closed);
    }
  }
  auto spot = abs_kernel_K_integral(kUnit, FracParams(1.0, 1.0), 1e-12);
  CHECK(spot.value == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("identity_f: linear, exact square, and brute-checked exponential") {
  auto lin = identity_f(identity_fn(), Interval(1.0, 2.0), FracParams(0.75, 2.0), 1e-11);
  CHECK(std::fabs(lin.left_side) <= 1e-9);
  CHECK(std::fabs(lin.right_side) <= 1e-9);
  CHECK(lin.pass);

  auto sq = identity_f(square_fn(), kUnit, FracParams(1.0, 1.0), 1e-12);
  CHECK(sq.left_side == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(sq.right_side == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(sq.residual <= 1e-8);

  auto ex = identity_f(exp_fn(), Interval(1.0, 2.0), FracParams(0.5, 2.0), 1e-11);
  CHECK(ex.residual <= 1e-6);
  CHECK(ex.pass);
}

TEST_CASE("hh_f derivative bound") {
  auto lin = hh_f_derivative_bound(identity_fn(), Interval(1.0, 2.0),
                                   FracParams(0.5, 2.0), 1e-11);
  CHECK(lin.quantity <= 1e-9);
  CHECK(lin.pass);

  auto sq = hh_f_derivative_bound(square_fn(), kUnit, FracParams(1.0, 1.0), 1e-12);
  // the F-chain doubles the unreflected gap: quantity is 1/3, not 1/6
  CHECK(sq.quantity == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(sq.bound == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(sq.pass);
}

TEST_CASE("fejer chain: unit weight reduces to the hh chain") {
  const Interval iv(1.0, 2.0);
  const FracParams params(0.5, 2.0);
  const double tol = 1e-11;
  WeightFunction unit;
  unit.id = "unit";
  unit.eval = [](double) { return 1.0; };
  unit.symmetric = true;
  unit.sup_norm = 1.0;
  unit.domain = iv;

  auto fejer = fejer_f(square_fn(), unit, iv, params, tol);
  auto hh = hh_f(square_fn(), iv, params, tol);
  const double w = power_diff(iv.b, iv.a, params.rho);
  const double s_unit = 2.0 * std::pow(w, params.alpha) /
                        (std::pow(params.rho, params.alpha) * gamma_fn(params.alpha + 1.0));
  CHECK(fejer.lhs == doctest::Approx(hh.lhs * s_unit).epsilon(1e-9));
  CHECK(fejer.mid == doctest::Approx(hh.mid * s_unit).epsilon(1e-9));
  CHECK(fejer.rhs == doctest::Approx(hh.rhs * s_unit).epsilon(1e-9));
  CHECK(fejer.pass);
}

TEST_CASE("fejer chain: linear source collapses, weighted square passes") {
  const Interval iv(0.0, 2.0);
  auto weights = generate_weights(iv, 4, 5);
  for (const WeightFunction& g : weights) {
    auto lin = fejer_f(identity_fn(), g, iv, FracParams(0.75, 1.5), 1e-11);
    CHECK(std::fabs(lin.margin_left) <= lin.tol);
    CHECK(std::fabs(lin.margin_right) <= lin.tol);
    CHECK(lin.pass);
  }
  auto sq = fejer_f(square_fn(), weights[1], iv, FracParams(0.5, 1.0), 1e-11);
  CHECK(sq.pass);
  CHECK(sq.margin_left >= 0.0);
  CHECK(sq.margin_right >= 0.0);
}

TEST_CASE("fejer_f rejects a negative weight") {
  WeightFunction bad;
  bad.id = "bad";
  bad.eval = [](double x) { return x - 1.0; };
  bad.symmetric = false;
  bad.sup_norm = 1.0;
  bad.domain = Interval(0.0, 2.0);
  CHECK_THROWS_AS(fejer_f(square_fn(), bad, Interval(0.0, 2.0), FracParams(0.5, 1.0), 1e-10),
                  std::invalid_argument);
}

TEST_CASE("kernel G: values, symmetry, and the cumulative difference") {
  const Interval iv(1.0, 2.0);
  CHECK(kernel_G(1.3, iv, FracParams(1.0, 1.0)) == doctest::Approx(2.0).epsilon(1e-13));
  // rho = 1 kernel swap symmetry
  for (double s : {1.1, 1.4, 1.75}) {
    CHECK(kernel_G(s, iv, FracParams(0.6, 1.0)) ==
          doctest::Approx(kernel_G(iv.a + iv.b - s, iv, FracParams(0.6, 1.0)))
              .epsilon(1e-12));
  }
  CHECK_THROWS_AS(kernel_G(1.0, iv, FracParams(0.5, 1.0)), std::domain_error);

  // int_a^t G - int_t^b G = (2/(alpha rho)) [(t^rho-a^rho)^alpha - (b^rho-t^rho)^alpha]
  const FracParams params(0.75, 2.0);
  const double alpha = params.alpha;
  const double rho = params.rho;
  for (double t : {1.2, 1.5, 1.9}) {
    SingularIntegralSpec lower;  // int_a^t of the a-anchored part + smooth b-part
    lower.interval = Interval(iv.a, t);
    lower.singular_end = SingularEnd::left;
    lower.exponent = alpha - 1.0;
    lower.smooth_part = [&](double s) {
      return std::pow(s, rho - 1.0) * power_diff_ratio(s, iv.a, rho, alpha - 1.0);
    };
    auto low_anchor = integrate_singular(lower, 1e-12);
    auto low_smooth = integrate_smooth(
        [&](double s) {
          return std::pow(s, rho - 1.0) * std::pow(power_diff(iv.b, s, rho), alpha - 1.0);
        },
        Interval(iv.a, t), 1e-12);

    SingularIntegralSpec upper;  // int_t^b of the b-anchored part + smooth a-part
    upper.interval = Interval(t, iv.b);
    upper.singular_end = SingularEnd::right;
    upper.exponent = alpha - 1.0;
    upper.smooth_part = [&](double s) {
      return std::pow(s, rho - 1.0) * power_diff_ratio(iv.b, s, rho, alpha - 1.0);
    };
    auto up_anchor = integrate_singular(upper, 1e-12);
    auto up_smooth = integrate_smooth(
        [&](double s) {
          return std::pow(s, rho - 1.0) * std::pow(power_diff(s, iv.a, rho), alpha - 1.0);
        },
        Interval(t, iv.b), 1e-12);

    const double cum_diff = (low_anchor.value + low_smooth.value) -
                            (up_anchor.value + up_smooth.value);
    const double closed = 2.0 / (alpha * rho) *
                          (std::pow(power_diff(t, iv.a, rho), alpha) -
                           std::pow(power_diff(iv.b, t, rho), alpha));
    CHECK(cum_diff == doctest::Approx(closed).epsilon(1e-9));
  }
}

TEST_CASE("fejer identity: linear source, unit-weight cross-check, cosine weight") {
  const Interval iv(1.0, 2.0);
  auto weights = generate_weights(iv, 3, 9);

  for (const WeightFunction& g : weights) {
    auto lin = fejer_identity(identity_fn(), g, iv, FracParams(0.5, 2.0), 1e-10);
    CHECK(std::fabs(lin.left_side) <= 1e-8);
    CHECK(std::fabs(lin.right_side) <= 1e-7);
    CHECK(lin.pass);
  }

  // unit weight: both sides must match the unweighted identity route
  const FracParams params(0.75, 1.5);
  auto weighted = fejer_identity(square_fn(), weights[0], iv, params, 1e-10);
  auto unweighted = identity_f(square_fn(), iv, params, 1e-10);
  const double w = power_diff(iv.b, iv.a, params.rho);
  const double s_unit = 2.0 * std::pow(w, params.alpha) /
                        (std::pow(params.rho, params.alpha) * gamma_fn(params.alpha + 1.0));
  CHECK(std::fabs(weighted.left_side - s_unit * unweighted.left_side) <= 1e-6);
  CHECK(std::fabs(weighted.right_side - s_unit * unweighted.right_side) <= 1e-6);

  // raised cosine at the fractional cell
  auto cosw = fejer_identity(square_fn(), weights[2], iv, FracParams(0.5, 1.0), 1e-10);
  CHECK(cosw.residual <= 1e-5);
  CHECK(cosw.pass);
}

TEST_CASE("fejer bound: unit-weight reduction and a weighted exponential") {
  const Interval iv(1.0, 2.0);
  const FracParams params(0.75, 2.0);
  WeightFunction unit;
  unit.id = "unit";
  unit.eval = [](double) { return 1.0; };
  unit.symmetric = true;
  unit.sup_norm = 1.0;
  unit.domain = iv;

  auto fb = fejer_bound(square_fn(), unit, iv, params, 1e-11);
  auto hb = hh_f_derivative_bound(square_fn(), iv, params, 1e-11);
  const double w = power_diff(iv.b, iv.a, params.rho);
  const double s_unit = 2.0 * std::pow(w, params.alpha) /
                        (std::pow(params.rho, params.alpha) * gamma_fn(params.alpha + 1.0));
  CHECK(fb.quantity == doctest::Approx(s_unit * hb.quantity).epsilon(1e-7));
  CHECK(fb.bound == doctest::Approx(s_unit * hb.bound).epsilon(1e-10));
  CHECK(fb.pass);

  auto lin = fejer_bound(identity_fn(), unit, iv, params, 1e-11);
  CHECK(lin.quantity <= 1e-8);
  CHECK(lin.pass);

  WeightFunction sqd;
  sqd.id = "square-dist";
  sqd.eval = [](double x) { return (x - 1.5) * (x - 1.5); };
  sqd.symmetric = true;
  sqd.sup_norm = 0.25;
  sqd.domain = iv;
  auto ex = fejer_bound(exp_fn(), sqd, iv, FracParams(0.75, 2.0), 1e-11);
  CHECK(ex.pass);
  CHECK(ex.slack > 0.0);
}

TEST_CASE("halving the quadrature tolerance never destabilizes a verdict") {
  const Interval iv(1.0, 2.0);
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    for (double rho : {0.5, 2.0}) {
      const FracParams params(0.75, rho);
      auto coarse = hh_katugampola(composed(exp_fn()), iv, params, tol);
      auto fine = hh_katugampola(composed(exp_fn()), iv, params, tol / 2.0);
      CHECK(coarse.pass == fine.pass);
      CHECK(std::fabs(coarse.mid - fine.mid) <= 2.0 * tol);
      auto rc = trapezoid_identity(composed(exp_fn()), iv, params,
                                   ConstantVariant::without_alpha, tol);
      auto rf = trapezoid_identity(composed(exp_fn()), iv, params,
                                   ConstantVariant::without_alpha, tol / 2.0);
      CHECK(rc.pass == rf.pass);
      CHECK(std::fabs(rc.residual - rf.residual) <= 2.0 * tol + 1e-12);
    }
  }
}

TEST_CASE("degenerate power width reports a skip") {
  // alpha large enough that (b^rho - a^rho)^alpha underflows
  const FracParams params(300.0, 1.0);
  const Interval thin(1.0, 1.0001);
  auto v = hh_katugampola(composed(square_fn()), thin, params, 1e-10);
  CHECK(v.skipped);
  auto b = first_derivative_bound(composed(square_fn()), thin, params, 1e-10);
  CHECK(b.skipped);
}

TEST_SUITE_END();
