#include <benchmark/benchmark.h>

#include <cmath>

#include "fracint/inequalities.hpp"
#include "fracint/operators.hpp"
#include "fracint/oracle.hpp"
#include "fracint/quadrature.hpp"

using namespace fracint;

namespace {

TestFunction exp_fn() {
  TestFunction f;
  f.id = "exp";
  f.eval = [](double t) { return std::exp(t); };
  f.deriv1 = [](double t) { return std::exp(t); };
  f.certificates.add(Certificate::convex).add(Certificate::abs_deriv_convex);
  f.domain = Interval(0.0, 40.0);
  return f;
}

OperatorRequest left_request(double alpha, double rho, double tol) {
  OperatorRequest req;
  req.kind = OperatorKind::katugampola;
  req.side = Side::left;
  req.params = FracParams(alpha, rho);
  req.base_point = 1.0;
  req.eval_point = 2.0;
  req.integrand = exp_fn();
  req.tol = tol;
  return req;
}

void GaussJacobiRuleBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double lambda = -0.5;
  for (auto _ : state) {
    // vary lambda slightly so every iteration misses the cache
    lambda += 1e-9;
    benchmark::DoNotOptimize(gauss_jacobi_rule(n, lambda));
  }
}
BENCHMARK(GaussJacobiRuleBuild)->Arg(16)->Arg(64)->Arg(256);

void GaussJacobiRuleCached(benchmark::State& state) {
  gauss_jacobi_rule(64, -0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gauss_jacobi_rule(64, -0.5));
  }
}
BENCHMARK(GaussJacobiRuleCached);

void OperatorEval(benchmark::State& state) {
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  const OperatorRequest req = left_request(0.5, 2.0, tol);
  for (auto _ : state) {
    benchmark::DoNotOptimize(katugampola(req));
  }
}
BENCHMARK(OperatorEval)->Arg(6)->Arg(10)->Arg(12);

void BruteForceOracle(benchmark::State& state) {
  const OperatorRequest req = left_request(0.5, 2.0, 1e-10);
  const long n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force(req, n));
  }
}
BENCHMARK(BruteForceOracle)->Arg(10000)->Arg(100000);

void HhChainCell(benchmark::State& state) {
  TestFunction f = exp_fn();
  const Interval iv(1.0, 2.0);
  const FracParams params(0.5, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hh_f(f, iv, params, 1e-10));
  }
}
BENCHMARK(HhChainCell);

void FejerIdentityCell(benchmark::State& state) {
  TestFunction f = exp_fn();
  const Interval iv(1.0, 2.0);
  const FracParams params(0.5, 2.0);
  WeightFunction g;
  g.id = "raised-cosine";
  g.eval = [](double x) { return 1.0 + std::cos(M_PI * (x - 1.5)); };
  g.symmetric = true;
  g.sup_norm = 2.0;
  g.domain = iv;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fejer_identity(f, g, iv, params, 1e-9));
  }
}
BENCHMARK(FejerIdentityCell);

}  // namespace

BENCHMARK_MAIN();
