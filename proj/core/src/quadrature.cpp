#include "fracint/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "fracint/special.hpp"

namespace fracint {

namespace {

// ---------------------------------------------------------------------------
// Golub-Welsch construction of Gauss-Jacobi rules.
//
// The symmetric tridiagonal eigenproblem is solved by the implicit-shift QL
// iteration, tracking only the first row of the eigenvector matrix; squared
// first components give the weights.
// ---------------------------------------------------------------------------

void tridiagonal_eigen(std::vector<double>& d, std::vector<double>& e,
                       std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  if (n == 1) return;
  e.resize(n, 0.0);  // e[i] couples d[i] and d[i+1]; e[n-1] is scratch

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= 1e-15 * dd) break;
      }
      if (m != l) {
        if (++iter > 64) {
          throw std::runtime_error("gauss_jacobi_rule: tridiagonal QL failed to converge");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          f = z[i + 1];
          z[i + 1] = s * z[i] + c * f;
          z[i] = c * z[i] - s * f;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Rule build_jacobi_rule(int n, double lambda) {
  // Monic Jacobi recurrence on [-1, 1] with weight (1-x)^A (1+x)^B, B = 0.
  const double A = lambda;
  const double B = 0.0;
  std::vector<double> diag(n), sub(n, 0.0);
  diag[0] = (B - A) / (A + B + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + A + B;
    diag[k] = (B * B - A * A) / (s * (s + 2.0));
    double bk;
    if (k == 1) {
      bk = 4.0 * (A + 1.0) * (B + 1.0) / ((A + B + 2.0) * (A + B + 2.0) * (A + B + 3.0));
    } else {
      bk = 4.0 * k * (k + A) * (k + B) * (k + A + B) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub[k - 1] = std::sqrt(bk);
  }
  const double mu0 =
      std::exp((A + B + 1.0) * std::log(2.0) + log_gamma(A + 1.0) + log_gamma(B + 1.0) -
               log_gamma(A + B + 2.0));

  std::vector<double> z(n, 0.0);
  z[0] = 1.0;
  tridiagonal_eigen(diag, sub, z);

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) { return diag[i] < diag[j]; });

  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const int j = order[i];
    // Map [-1, 1] with weight (1-x)^lambda onto [0, 1] with (1-s)^lambda.
    rule.nodes[i] = 0.5 * (1.0 + diag[j]);
    rule.weights[i] = mu0 * z[j] * z[j] * std::pow(2.0, -lambda - 1.0);
  }
  return rule;
}

const Rule& cached_rule(int n, double lambda) {
  static std::mutex mutex;
  static std::map<std::pair<int, std::uint64_t>, std::unique_ptr<Rule>> cache;
  std::uint64_t key_bits;
  std::memcpy(&key_bits, &lambda, sizeof key_bits);
  const auto key = std::make_pair(n, key_bits);
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<Rule>(build_jacobi_rule(n, lambda))).first;
  }
  return *it->second;
}

double checked_eval(const RealFn& f, double u) {
  const double v = f(u);
  if (!std::isfinite(v)) {
    throw std::runtime_error("integrand evaluated to a non-finite value at u=" +
                             std::to_string(u));
  }
  return v;
}

// One refinement level: integral of f(u) * (distance to singular end)^lambda
// over [lo, hi] with the weight absorbed into an n-point Jacobi rule.
double weighted_level(const RealFn& f, double lo, double hi, SingularEnd end,
                      double lambda, int n) {
  const Rule& rule = cached_rule(n, lambda);
  const double w = hi - lo;
  // Neumaier-compensated accumulation keeps fixed-order sums accurate.
  double sum = 0.0, comp = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = rule.nodes[i];
    const double u = (end == SingularEnd::right) ? lo + w * s : hi - w * s;
    const double term = rule.weights[i] * checked_eval(f, u);
    const double t = sum + term;
    comp += (std::fabs(sum) >= std::fabs(term)) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return (sum + comp) * std::pow(w, lambda + 1.0);
}

double smooth_level(const RealFn& f, double lo, double hi, int n) {
  const Rule& rule = cached_rule(n, 0.0);
  const double w = hi - lo;
  double sum = 0.0, comp = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = lo + w * rule.nodes[i];
    const double term = rule.weights[i] * checked_eval(f, u);
    const double t = sum + term;
    comp += (std::fabs(sum) >= std::fabs(term)) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return (sum + comp) * w;
}

constexpr int kFirstLevel = 16;
constexpr int kMaxLevel = 4096;

IntegralResult refine_piece(const std::function<double(int)>& level, double tol) {
  IntegralResult res;
  double prev = level(kFirstLevel);
  res.nodes_used += kFirstLevel;
  for (int n = 2 * kFirstLevel; n <= kMaxLevel; n *= 2) {
    const double cur = level(n);
    res.nodes_used += n;
    res.error_estimate = std::fabs(cur - prev);
    res.value = cur;
    if (res.error_estimate <= tol) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  res.converged = false;
  return res;
}

std::vector<double> interior_splits(const Interval& iv, const std::vector<double>& kinks) {
  std::vector<double> pts;
  for (double k : kinks) {
    if (k > iv.a && k < iv.b) pts.push_back(k);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

std::vector<QuadNode> gauss_jacobi_rule(int n, double lambda) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi_rule: n must be >= 1");
  if (!(lambda > -1.0)) throw std::invalid_argument("gauss_jacobi_rule: lambda must be > -1");
  const Rule& rule = cached_rule(n, lambda);
  std::vector<QuadNode> out(n);
  for (int i = 0; i < n; ++i) out[i] = {rule.nodes[i], rule.weights[i]};
  return out;
}

std::vector<QuadNode> gauss_legendre_rule(int n) { return gauss_jacobi_rule(n, 0.0); }

IntegralResult integrate_singular(const SingularIntegralSpec& spec, double tol) {
  if (!(spec.exponent > -1.0)) {
    throw std::invalid_argument("integrate_singular: exponent must be > -1");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_singular: tol must be > 0");

  const Interval& iv = spec.interval;
  const double singular_point = (spec.singular_end == SingularEnd::right) ? iv.b : iv.a;
  std::vector<double> splits = interior_splits(iv, spec.kinks);

  std::vector<double> edges;
  edges.push_back(iv.a);
  for (double s : splits) edges.push_back(s);
  edges.push_back(iv.b);

  const int pieces = static_cast<int>(edges.size()) - 1;
  const double piece_tol = tol / pieces;
  IntegralResult total;
  total.converged = true;

  for (int p = 0; p < pieces; ++p) {
    const double lo = edges[p];
    const double hi = edges[p + 1];
    const bool touches_singular =
        (spec.singular_end == SingularEnd::right) ? (p == pieces - 1) : (p == 0);
    IntegralResult piece;
    if (touches_singular || spec.exponent == 0.0) {
      piece = refine_piece(
          [&](int n) {
            return weighted_level(spec.smooth_part, lo, hi, spec.singular_end,
                                  spec.exponent, n);
          },
          piece_tol);
    } else {
      // Away from the singular endpoint the weight factor is regular; fold
      // it into the integrand and use plain Gauss-Legendre.
      const double e = spec.exponent;
      auto weighted = [&](double u) {
        const double d = std::fabs(singular_point - u);
        return spec.smooth_part(u) * std::pow(d, e);
      };
      piece = refine_piece([&](int n) { return smooth_level(weighted, lo, hi, n); },
                           piece_tol);
    }
    total += piece;
  }
  return total;
}

IntegralResult integrate_smooth(const RealFn& f, const Interval& interval, double tol,
                                const std::vector<double>& kinks) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_smooth: tol must be > 0");
  std::vector<double> splits = interior_splits(interval, kinks);
  std::vector<double> edges;
  edges.push_back(interval.a);
  for (double s : splits) edges.push_back(s);
  edges.push_back(interval.b);

  const int pieces = static_cast<int>(edges.size()) - 1;
  const double piece_tol = tol / pieces;
  IntegralResult total;
  total.converged = true;
  for (int p = 0; p < pieces; ++p) {
    total += refine_piece(
        [&](int n) { return smooth_level(f, edges[p], edges[p + 1], n); }, piece_tol);
  }
  return total;
}

IntegralResult scale_result(IntegralResult r, double c) {
  r.value *= c;
  r.error_estimate *= std::fabs(c);
  return r;
}

}  // namespace fracint
