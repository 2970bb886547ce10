#include <cmath>
#include <doctest.h>

#include "fracint/operators.hpp"
#include "fracint/oracle.hpp"
#include "fracint/special.hpp"
#include "test_helpers.hpp"

using namespace fracint;
using namespace testutil;

TEST_SUITE_BEGIN("operators");

TEST_CASE("riemann-liouville reference values") {
  // constant: (x-a)^alpha / Gamma(alpha+1)
  auto r = riemann_liouville(request(OperatorKind::riemann_liouville, Side::left, 0.5,
                                     1.0, 0.0, 1.0, constant(1.0)));
  CHECK(r.value == doctest::Approx(1.0 / gamma_fn(1.5)).epsilon(1e-11));
  CHECK(r.value == doctest::Approx(1.1283791670955126).epsilon(1e-11));

  // plain integral of t at alpha = 1
  auto p = riemann_liouville(request(OperatorKind::riemann_liouville, Side::left, 1.0,
                                     1.0, 0.0, 1.0, identity_fn()));
  CHECK(p.value == doctest::Approx(0.5).epsilon(1e-12));

  // f(t) = t - a at alpha = 1/2: Gamma(2)/Gamma(2.5) by the beta identity
  auto b = riemann_liouville(request(OperatorKind::riemann_liouville, Side::left, 0.5,
                                     1.0, 0.0, 1.0, identity_fn()));
  CHECK(b.value == doctest::Approx(gamma_fn(2.0) / gamma_fn(2.5)).epsilon(1e-11));
  CHECK(b.value == doctest::Approx(closed_form_power(1.0, FracParams(0.5, 1.0), 0.0, 1.0))
                       .epsilon(1e-11));
}

TEST_CASE("hadamard reference values") {
  // constant c: c (ln(x/a))^alpha / Gamma(alpha+1); at a=1, x=e the log is 1
  for (double alpha : {0.3, 1.0, 1.7}) {
    auto r = hadamard(request(OperatorKind::hadamard, Side::left, alpha, 1.0, 1.0,
                              std::exp(1.0), constant(2.5, Interval(0.5, 10.0))));
    CHECK(r.value == doctest::Approx(2.5 / gamma_fn(alpha + 1.0)).epsilon(1e-11));
  }
  auto two = hadamard(request(OperatorKind::hadamard, Side::left, 1.0, 1.0, 1.0,
                              std::exp(2.0), constant(1.0, Interval(0.5, 10.0))));
  CHECK(two.value == doctest::Approx(2.0).epsilon(1e-12));

  // f = ln t on [1, e]: the same beta form in v = ln t
  auto lg = hadamard(request(OperatorKind::hadamard, Side::left, 0.5, 1.0, 1.0,
                             std::exp(1.0), log_fn()));
  CHECK(lg.value == doctest::Approx(gamma_fn(2.0) / gamma_fn(2.5)).epsilon(1e-11));
}

TEST_CASE("katugampola reference values") {
  auto r = katugampola(request(OperatorKind::katugampola, Side::left, 0.5, 2.0, 0.0, 1.0,
                               constant(1.0)));
  CHECK(r.value == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-11));
  CHECK(r.value ==
        doctest::Approx(closed_form_constant(1.0, FracParams(0.5, 2.0), 0.0, 1.0))
            .epsilon(1e-12));

  // f(t) = t^rho with rho = 3 is the anchored power with beta = 1
  TestFunction trho;
  trho.id = "t^3";
  trho.eval = [](double t) { return std::pow(t, 3.0); };
  trho.domain = Interval(0.0, 2.0);
  auto p = katugampola(request(OperatorKind::katugampola, Side::left, 0.5, 3.0, 0.0, 1.0,
                               trho));
  CHECK(p.value == doctest::Approx(closed_form_power(1.0, FracParams(0.5, 3.0), 0.0, 1.0))
                       .epsilon(1e-11));
  CHECK(p.value ==
        doctest::Approx(std::pow(3.0, -0.5) * gamma_fn(2.0) / gamma_fn(2.5)).epsilon(1e-11));
}

TEST_CASE("katugampola reduces to riemann-liouville at rho = 1") {
  for (const TestFunction& f : {identity_fn(), square_fn(), exp_fn()}) {
    for (double alpha : {0.25, 0.5, 1.0, 1.5, 3.0}) {
      for (auto [side, base, eval] : {std::tuple{Side::left, 0.5, 2.0},
                                      std::tuple{Side::right, 2.0, 0.5}}) {
        const double tol = 1e-11;
        auto kat = katugampola(
            request(OperatorKind::katugampola, side, alpha, 1.0, base, eval, f, tol));
        auto rl = riemann_liouville(request(OperatorKind::riemann_liouville, side, alpha,
                                            1.0, base, eval, f, tol));
        CHECK(std::fabs(kat.value - rl.value) <= 2.0 * tol);
      }
    }
  }
}

TEST_CASE("composed convention samples the function without the root") {
  // f(u) = u on [0, 1], alpha = 1, rho = 2: int_0^1 t^(rho-1) f(t^rho) dt = 1/4,
  // matching the anchored-power closed form with beta = 1.
  TestFunction idc = identity_fn(Interval(0.0, 1.0));
  idc.convention = DomainConvention::power_composed;
  auto r = katugampola_composed(
      request(OperatorKind::katugampola, Side::left, 1.0, 2.0, 0.0, 1.0, idc));
  CHECK(r.value == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(closed_form_power(1.0, FracParams(1.0, 2.0), 0.0, 1.0))
                       .epsilon(1e-12));

  // constants are unaffected by composition
  TestFunction cc = constant(3.0);
  cc.convention = DomainConvention::power_composed;
  auto c = katugampola_composed(
      request(OperatorKind::katugampola, Side::left, 0.75, 2.5, 0.0, 1.5, cc));
  CHECK(c.value ==
        doctest::Approx(closed_form_constant(3.0, FracParams(0.75, 2.5), 0.0, 1.5))
            .epsilon(1e-11));

  // f(u) = u^2 at rho = 1: Gamma(3)/Gamma(3.5)
  TestFunction sqc = square_fn(Interval(0.0, 1.0));
  sqc.convention = DomainConvention::power_composed;
  auto s = katugampola_composed(
      request(OperatorKind::katugampola, Side::left, 0.5, 1.0, 0.0, 1.0, sqc));
  CHECK(s.value == doctest::Approx(gamma_fn(3.0) / gamma_fn(3.5)).epsilon(1e-11));
  CHECK(s.value == doctest::Approx(0.6018022224509400).epsilon(1e-11));
}

TEST_CASE("linearity within 2 tol") {
  const double tol = 1e-11;
  auto f1 = square_fn();
  auto f2 = exp_fn();
  TestFunction combo;
  combo.id = "combo";
  combo.eval = [](double t) { return 2.0 * t * t - 0.5 * std::exp(t); };
  combo.domain = Interval(0.0, 40.0);
  for (auto kind : {OperatorKind::riemann_liouville, OperatorKind::katugampola}) {
    auto vc = evaluate_operator(request(kind, Side::left, 0.6, 1.7, 0.0, 1.0, combo, tol));
    auto v1 = evaluate_operator(request(kind, Side::left, 0.6, 1.7, 0.0, 1.0, f1, tol));
    auto v2 = evaluate_operator(request(kind, Side::left, 0.6, 1.7, 0.0, 1.0, f2, tol));
    CHECK(std::fabs(vc.value - (2.0 * v1.value - 0.5 * v2.value)) <= 2.0 * tol);
  }
}

TEST_CASE("positivity: nonnegative integrand gives nonnegative value") {
  const double tol = 1e-11;
  for (double rho : {0.3, 1.0, 4.0}) {
    for (double alpha : {0.25, 1.0, 2.5}) {
      auto v = katugampola(request(OperatorKind::katugampola, Side::left, alpha, rho,
                                   0.25, 1.75, exp_fn(), tol));
      CHECK(v.value >= -tol);
    }
  }
}

TEST_CASE("mirror symmetry at rho = 1") {
  // Left operator of f at b equals the right operator of the reflection at a.
  const Interval iv(0.5, 2.0);
  TestFunction f = exp_fn();
  TestFunction reflected;
  reflected.id = "reflected";
  reflected.eval = [iv](double t) { return std::exp(iv.a + iv.b - t); };
  reflected.domain = f.domain;
  for (double alpha : {0.5, 1.5}) {
    auto left = katugampola(
        request(OperatorKind::katugampola, Side::left, alpha, 1.0, iv.a, iv.b, f));
    auto right = katugampola(request(OperatorKind::katugampola, Side::right, alpha, 1.0,
                                     iv.b, iv.a, reflected));
    CHECK(left.value == doctest::Approx(right.value).epsilon(1e-10));
  }
}

TEST_CASE("orientation and domain preconditions") {
  CHECK_THROWS_AS(katugampola(request(OperatorKind::katugampola, Side::left, 0.5, 1.0,
                                      1.0, 0.5, constant(1.0))),
                  std::domain_error);
  CHECK_THROWS_AS(katugampola(request(OperatorKind::katugampola, Side::right, 0.5, 1.0,
                                      0.5, 1.0, constant(1.0))),
                  std::domain_error);
  CHECK_THROWS_AS(hadamard(request(OperatorKind::hadamard, Side::left, 0.5, 1.0, 0.0,
                                   1.0, constant(1.0))),
                  std::domain_error);
  CHECK_THROWS_AS(katugampola(request(OperatorKind::katugampola, Side::left, 0.5, 1.0,
                                      -0.5, 1.0, constant(1.0))),
                  std::domain_error);

  // convention mismatches are validation errors, not silent wrong answers
  TestFunction composed = constant(1.0);
  composed.convention = DomainConvention::power_composed;
  CHECK_THROWS_AS(katugampola(request(OperatorKind::katugampola, Side::left, 0.5, 1.0,
                                      0.0, 1.0, composed)),
                  std::invalid_argument);
  CHECK_THROWS_AS(katugampola_composed(request(OperatorKind::katugampola, Side::left, 0.5,
                                               1.0, 0.0, 1.0, constant(1.0))),
                  std::invalid_argument);
  // composed integrand must cover [base^rho, eval^rho]
  TestFunction narrow = constant(1.0, Interval(0.0, 1.0));
  narrow.convention = DomainConvention::power_composed;
  CHECK_THROWS_AS(katugampola_composed(request(OperatorKind::katugampola, Side::left, 0.5,
                                               2.0, 0.0, 1.5, narrow)),
                  std::domain_error);
}

TEST_CASE("right operator evaluated at zero") {
  // kernel and t^(rho-1) merge into t^(rho alpha - 1); checked against the
  // anchored power family and the brute-force rule.
  for (double rho : {0.4, 2.0, 5.0}) {
    for (double alpha : {0.25, 1.5}) {
      auto req = request(OperatorKind::katugampola, Side::right, alpha, rho, 1.0, 0.0,
                         constant(1.0));
      auto v = katugampola(req);
      CHECK(v.value ==
            doctest::Approx(closed_form_constant(1.0, FracParams(alpha, rho), 0.0, 1.0))
                .epsilon(1e-10));
      CHECK(v.value == doctest::Approx(brute_force(req, 200000)).epsilon(1e-7));
    }
  }
}

TEST_SUITE_END();
