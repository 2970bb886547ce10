#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracint/types.hpp"

namespace fracint {

enum class Family {
  affine,
  quadratic,
  even_power,
  exponential,
  power_p,
  piecewise_linear_random,
  neg_log,
};

const char* family_name(Family f);

/// All six smooth families (everything except piecewise_linear_random).
std::vector<Family> smooth_families();
std::vector<Family> all_families();

struct CorpusSpec {
  std::vector<Family> families;
  int count_per_family = 1;
  std::uint64_t seed = 0;
  Interval interval{0.0, 1.0};
};

/// Deterministic convex test functions. Identical (spec, seed) pairs produce
/// bit-identical corpora. Every emitted function carries exactly the
/// certificates its family guarantees:
///   affine, quadratic, even_power, exponential, power_p, neg_log:
///       convex, abs_deriv_convex, second_deriv_bounded (+ symmetric for
///       even_power, whose center is the interval midpoint)
///   piecewise_linear_random: convex only; no derivative maps, kinks listed.
/// Values stay O(1) on the requested interval: parameter ranges are scaled
/// by the interval width so wide sweeps do not blow up function magnitudes.
std::vector<TestFunction> generate_convex(const CorpusSpec& spec);

/// Nonnegative weights symmetric about the interval midpoint: the unit
/// weight, (x-m)^2, 1 + cos(pi (x-m)/(b-a)), then seeded even polynomials
/// in (x-m) with nonnegative coefficients until count is reached.
std::vector<WeightFunction> generate_weights(const Interval& interval, int count,
                                             std::uint64_t seed);

/// One record per function: family, id, parameters, certificates, seed.
std::string corpus_manifest(const CorpusSpec& spec,
                            const std::vector<TestFunction>& corpus);

/// Re-tags a generated function as living on [a^rho, b^rho] for the
/// power-composed suites; the closure itself is unchanged.
TestFunction as_power_composed(TestFunction f);

}  // namespace fracint
