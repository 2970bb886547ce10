#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracint {

/// Order alpha and generalization parameter rho shared by all operators.
/// rho = 0 is never evaluated directly; the log-kernel operator has its own
/// evaluation path and only ever appears as a limit target.
struct FracParams {
  double alpha;
  double rho;

  FracParams(double alpha_, double rho_) : alpha(alpha_), rho(rho_) {
    if (!(alpha > 0.0)) throw std::invalid_argument("FracParams: alpha must be > 0");
    if (!(rho > 0.0)) throw std::invalid_argument("FracParams: rho must be > 0");
  }
};

struct Interval {
  double a;
  double b;

  Interval(double a_, double b_) : a(a_), b(b_) {
    if (!(a < b)) throw std::invalid_argument("Interval: requires a < b");
  }

  double width() const { return b - a; }
  double midpoint() const { return 0.5 * (a + b); }
  bool contains(double x) const { return x >= a && x <= b; }
};

enum class Certificate : unsigned {
  convex = 1u << 0,
  abs_deriv_convex = 1u << 1,
  second_deriv_bounded = 1u << 2,
  symmetric_to_midpoint = 1u << 3,
};

struct CertSet {
  unsigned bits = 0;

  bool has(Certificate c) const { return (bits & static_cast<unsigned>(c)) != 0; }
  CertSet& add(Certificate c) {
    bits |= static_cast<unsigned>(c);
    return *this;
  }
};

/// Whether a function is meant to be fed to the operators directly, or is
/// defined on [a^rho, b^rho] and composed with t -> t^rho inside the
/// operator. The two conventions produce different values for the same
/// closure, so they are tagged and validated rather than inferred.
enum class DomainConvention { direct, power_composed };

using RealFn = std::function<double(double)>;

struct TestFunction {
  std::string id;
  RealFn eval;
  RealFn deriv1;  // empty when unavailable
  RealFn deriv2;
  CertSet certificates;
  DomainConvention convention = DomainConvention::direct;
  Interval domain{0.0, 1.0};
  std::vector<double> kinks;  // interior non-smooth points, sorted

  bool has_deriv1() const { return static_cast<bool>(deriv1); }
  bool has_deriv2() const { return static_cast<bool>(deriv2); }
  double operator()(double x) const { return eval(x); }
};

struct WeightFunction {
  std::string id;
  RealFn eval;
  bool symmetric = false;
  double sup_norm = 0.0;
  Interval domain{0.0, 1.0};

  double operator()(double x) const { return eval(x); }
};

/// Sampled validation of the certificates a TestFunction carries. These are
/// guards against corpus bugs, not proofs: 256 random midpoint triples for
/// convexity, central differences at interior points for deriv1.
/// Each throws std::invalid_argument on a violation.
void check_convexity_sampled(const TestFunction& f, int triples = 256,
                             std::uint64_t seed = 0x5eedu);
void check_deriv1_sampled(const TestFunction& f, int points = 64,
                          double rel_tol = 1e-6);
void check_weight(const WeightFunction& g, int points = 257);

/// Deterministic, platform-independent uniform generator used by the
/// sampled checks and the corpus module (splitmix64).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  std::uint64_t state_;
};

}  // namespace fracint
