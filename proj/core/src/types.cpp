#include "fracint/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracint {

namespace {

void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

void check_convexity_sampled(const TestFunction& f, int triples, std::uint64_t seed) {
  if (!f.certificates.has(Certificate::convex)) return;
  SplitMix64 rng(seed);
  const double lo = f.domain.a;
  const double hi = f.domain.b;
  double scale = 1.0;
  for (int i = 0; i < triples; ++i) {
    const double x = rng.uniform(lo, hi);
    const double y = rng.uniform(lo, hi);
    const double fx = f.eval(x);
    const double fy = f.eval(y);
    const double fm = f.eval(0.5 * (x + y));
    scale = std::max({scale, std::fabs(fx), std::fabs(fy)});
    if (!std::isfinite(fx) || !std::isfinite(fy) || !std::isfinite(fm)) {
      fail("convexity check: non-finite sample for " + f.id);
    }
    if (fm > 0.5 * (fx + fy) + 1e-10 * scale) {
      fail("convexity certificate violated for " + f.id + " at x=" + std::to_string(x) +
           ", y=" + std::to_string(y));
    }
  }
}

void check_deriv1_sampled(const TestFunction& f, int points, double rel_tol) {
  if (!f.has_deriv1()) return;
  const double lo = f.domain.a;
  const double hi = f.domain.b;
  const double w = hi - lo;
  const double h = 1e-5 * w;
  for (int i = 1; i <= points; ++i) {
    const double x = lo + w * static_cast<double>(i) / (points + 1);
    if (x - h <= lo || x + h >= hi) continue;
    // Skip the neighborhood of declared kinks.
    bool near_kink = false;
    for (double k : f.kinks) {
      if (std::fabs(x - k) < 4.0 * h) near_kink = true;
    }
    if (near_kink) continue;
    const double fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
    const double d = f.deriv1(x);
    const double scale = std::max({1.0, std::fabs(d), std::fabs(fd)});
    // Central differences carry an O(h^2) truncation term themselves.
    if (std::fabs(fd - d) > rel_tol * scale) {
      fail("deriv1 disagrees with central difference for " + f.id + " at x=" +
           std::to_string(x));
    }
  }
}

void check_weight(const WeightFunction& g, int points) {
  const double lo = g.domain.a;
  const double hi = g.domain.b;
  const double tol = 1e-12 * std::max(1.0, g.sup_norm);
  for (int i = 0; i <= points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / points;
    const double v = g.eval(x);
    if (!std::isfinite(v)) fail("weight check: non-finite sample for " + g.id);
    if (v < -tol) fail("weight must be nonnegative: " + g.id + " at x=" + std::to_string(x));
    if (g.symmetric) {
      const double mirrored = g.eval(lo + hi - x);
      if (std::fabs(v - mirrored) > tol) {
        fail("weight symmetry violated for " + g.id + " at x=" + std::to_string(x));
      }
    }
  }
}

}  // namespace fracint
