#include <cmath>
#include <doctest.h>

#include "fracint/corpus.hpp"

using namespace fracint;

TEST_SUITE_BEGIN("corpus");

namespace {

CorpusSpec spec_for(Interval iv, int count = 2, std::uint64_t seed = 42) {
  CorpusSpec spec;
  spec.families = all_families();
  spec.count_per_family = count;
  spec.seed = seed;
  spec.interval = iv;
  return spec;
}

}  // namespace

TEST_CASE("identical spec and seed produce bit-identical corpora") {
  const CorpusSpec spec = spec_for(Interval(1.0, 2.0));
  auto a = generate_convex(spec);
  auto b = generate_convex(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    for (int j = 0; j <= 32; ++j) {
      const double x = 1.0 + j / 32.0;
      CHECK(a[i].eval(x) == b[i].eval(x));
    }
  }
  CHECK(corpus_manifest(spec, a) == corpus_manifest(spec, b));

  CorpusSpec other = spec;
  other.seed = 43;
  auto c = generate_convex(other);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].eval(1.5) != c[i].eval(1.5)) any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("every certificate passes its sampled check") {
  for (const Interval iv : {Interval(0.0, 1.0), Interval(1.0, 2.0), Interval(1.0, 32.0)}) {
    for (const TestFunction& f : generate_convex(spec_for(iv, 3))) {
      CHECK_NOTHROW(check_convexity_sampled(f));
      CHECK_NOTHROW(check_deriv1_sampled(f));
    }
  }
}

TEST_CASE("family contracts: derivatives, kinks, symmetry, positivity") {
  auto corpus = generate_convex(spec_for(Interval(1.0, 2.0), 3));
  int piecewise_seen = 0, symmetric_seen = 0;
  for (const TestFunction& f : corpus) {
    CHECK(f.certificates.has(Certificate::convex));
    if (f.id.rfind("piecewise", 0) == 0) {
      ++piecewise_seen;
      CHECK_FALSE(f.has_deriv1());
      CHECK_FALSE(f.kinks.empty());
      CHECK_FALSE(f.certificates.has(Certificate::abs_deriv_convex));
    } else {
      CHECK(f.has_deriv1());
      CHECK(f.certificates.has(Certificate::abs_deriv_convex));
    }
    if (f.certificates.has(Certificate::symmetric_to_midpoint)) {
      ++symmetric_seen;
      const double m = f.domain.midpoint();
      for (int j = 0; j <= 16; ++j) {
        const double dx = 0.5 * f.domain.width() * j / 16.0;
        CHECK(f.eval(m + dx) == doctest::Approx(f.eval(m - dx)).epsilon(1e-12));
      }
    }
    // emitted functions stay positive on their domain
    for (int j = 0; j <= 64; ++j) {
      const double x = f.domain.a + f.domain.width() * j / 64.0;
      CHECK(f.eval(x) > 0.0);
    }
  }
  CHECK(piecewise_seen == 3);
  CHECK(symmetric_seen >= 3);  // the even-power family
}

TEST_CASE("weights: fixed members and seeded polynomials") {
  auto weights = generate_weights(Interval(0.0, 2.0), 5, 7);
  REQUIRE(weights.size() == 5);
  CHECK(weights[0].id == "unit");
  CHECK(weights[0].sup_norm == doctest::Approx(1.0));
  CHECK(weights[1].id == "square-dist");
  CHECK(weights[1].sup_norm == doctest::Approx(1.0));  // (x-1)^2 peaks at 1 on [0,2]
  CHECK(weights[2].id == "raised-cosine");
  for (const WeightFunction& g : weights) {
    CHECK(g.symmetric);
    CHECK_NOTHROW(check_weight(g));
  }
}

TEST_CASE("manifest has one record per function") {
  const CorpusSpec spec = spec_for(Interval(0.0, 1.0), 2);
  auto corpus = generate_convex(spec);
  const std::string manifest = corpus_manifest(spec, corpus);
  std::size_t lines = 0;
  for (char c : manifest) {
    if (c == '\n') ++lines;
  }
  CHECK(lines == corpus.size() + 2);  // two header lines
  CHECK(manifest.find("even-power-1") != std::string::npos);
  CHECK(manifest.find("symmetric-to-midpoint") != std::string::npos);
}

TEST_CASE("invalid specs are rejected") {
  CorpusSpec empty = spec_for(Interval(0.0, 1.0));
  empty.families.clear();
  CHECK_THROWS_AS(generate_convex(empty), std::invalid_argument);
  CorpusSpec zero = spec_for(Interval(0.0, 1.0));
  zero.count_per_family = 0;
  CHECK_THROWS_AS(generate_convex(zero), std::invalid_argument);
  CHECK_THROWS_AS(generate_weights(Interval(0.0, 1.0), 0, 1), std::invalid_argument);
}

TEST_CASE("power-composed retagging keeps the closure") {
  auto corpus = generate_convex(spec_for(Interval(1.0, 32.0), 1));
  TestFunction f = corpus.front();
  TestFunction composed = as_power_composed(f);
  CHECK(composed.convention == DomainConvention::power_composed);
  CHECK(composed.eval(2.0) == f.eval(2.0));
}

TEST_SUITE_END();
