#include "fracint/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fracint {

namespace {

std::string format_params(const std::vector<std::pair<const char*, double>>& params) {
  std::string out;
  char buf[64];
  for (const auto& [name, value] : params) {
    if (!out.empty()) out += ";";
    std::snprintf(buf, sizeof buf, "%s=%.17g", name, value);
    out += buf;
  }
  return out;
}

struct Generated {
  TestFunction fn;
  std::string params;
};

CertSet smooth_certs() {
  CertSet c;
  c.add(Certificate::convex)
      .add(Certificate::abs_deriv_convex)
      .add(Certificate::second_deriv_bounded);
  return c;
}

Generated make_affine(SplitMix64& rng, const Interval& iv, const std::string& id) {
  const double m = iv.midpoint();
  const double h = 0.5 * iv.width();
  const double p = rng.uniform(-2.0, 2.0) / std::max(1.0, h);
  const double q = 0.2 + std::fabs(p) * h + rng.uniform(0.0, 1.0);
  Generated g;
  g.fn.id = id;
  g.fn.eval = [p, q, m](double x) { return p * (x - m) + q; };
  g.fn.deriv1 = [p](double) { return p; };
  g.fn.deriv2 = [](double) { return 0.0; };
  g.fn.certificates = smooth_certs();
  g.fn.domain = iv;
  g.params = format_params({{"p", p}, {"q", q}, {"m", m}});
  return g;
}

Generated make_quadratic(SplitMix64& rng, const Interval& iv, const std::string& id) {
  const double m = iv.midpoint();
  const double h = 0.5 * iv.width();
  const double c2 = rng.uniform(0.1, 1.5);
  const double c1 = rng.uniform(-1.0, 1.0);
  const double c0 = 0.3 + std::fabs(c1) + rng.uniform(0.0, 0.5);
  Generated g;
  g.fn.id = id;
  g.fn.eval = [=](double x) {
    const double xi = (x - m) / h;
    return c2 * xi * xi + c1 * xi + c0;
  };
  g.fn.deriv1 = [=](double x) { return (2.0 * c2 * (x - m) / h + c1) / h; };
  g.fn.deriv2 = [=](double) { return 2.0 * c2 / (h * h); };
  g.fn.certificates = smooth_certs();
  g.fn.domain = iv;
  g.params = format_params({{"c2", c2}, {"c1", c1}, {"c0", c0}, {"m", m}, {"h", h}});
  return g;
}

Generated make_even_power(SplitMix64& rng, const Interval& iv, const std::string& id) {
  const double m = iv.midpoint();
  const double h = 0.5 * iv.width();
  const int k = 1 + static_cast<int>(rng.next_u64() % 3);  // exponent 2k
  const double c = rng.uniform(0.5, 2.0);
  const double d = rng.uniform(0.1, 1.0);
  Generated g;
  g.fn.id = id;
  g.fn.eval = [=](double x) {
    const double xi = (x - m) / h;
    return c * std::pow(xi, 2 * k) + d;
  };
  g.fn.deriv1 = [=](double x) {
    const double xi = (x - m) / h;
    return 2.0 * k * c * std::pow(xi, 2 * k - 1) / h;
  };
  g.fn.deriv2 = [=](double x) {
    const double xi = (x - m) / h;
    return 2.0 * k * (2 * k - 1) * c * std::pow(xi, 2 * k - 2) / (h * h);
  };
  g.fn.certificates = smooth_certs();
  g.fn.certificates.add(Certificate::symmetric_to_midpoint);
  g.fn.domain = iv;
  g.params = format_params({{"k", double(k)}, {"c", c}, {"d", d}, {"m", m}, {"h", h}});
  return g;
}

Generated make_exponential(SplitMix64& rng, const Interval& iv, const std::string& id) {
  const double m = iv.midpoint();
  // Rate normalized by the interval width so values stay O(e^2) on wide
  // sweep hulls; on a width-2 interval this is the plain range [0.1, 2].
  const double scale = std::min(1.0, 2.0 / iv.width());
  const double k = rng.uniform(0.1, 2.0) * scale;
  Generated g;
  g.fn.id = id;
  g.fn.eval = [=](double x) { return std::exp(k * (x - m)); };
  g.fn.deriv1 = [=](double x) { return k * std::exp(k * (x - m)); };
  g.fn.deriv2 = [=](double x) { return k * k * std::exp(k * (x - m)); };
  g.fn.certificates = smooth_certs();
  g.fn.domain = iv;
  g.params = format_params({{"k", k}, {"m", m}});
  return g;
}

Generated make_power_p(SplitMix64& rng, const Interval& iv, const std::string& id) {
  // p >= 2 keeps |f'| convex and f'' bounded down to the left endpoint.
  const double p = rng.uniform(2.0, 3.5);
  const double c = rng.uniform(0.3, 1.2);
  const double d = rng.uniform(0.1, 0.5);
  const double lo = iv.a;
  const double w = iv.width();
  Generated g;
  g.fn.id = id;
  g.fn.eval = [=](double x) { return c * std::pow((x - lo) / w, p) + d; };
  g.fn.deriv1 = [=](double x) { return c * p * std::pow((x - lo) / w, p - 1.0) / w; };
  g.fn.deriv2 = [=](double x) {
    return c * p * (p - 1.0) * std::pow((x - lo) / w, p - 2.0) / (w * w);
  };
  g.fn.certificates = smooth_certs();
  g.fn.domain = iv;
  g.params = format_params({{"p", p}, {"c", c}, {"d", d}});
  return g;
}

Generated make_piecewise_linear(SplitMix64& rng, const Interval& iv, const std::string& id) {
  constexpr int kSegments = 4;
  // Ascending slopes make the piecewise-linear function convex.
  std::vector<double> slopes(kSegments);
  const double slope_scale = 1.5 / std::max(1.0, 0.5 * iv.width());
  for (auto& s : slopes) s = rng.uniform(-1.0, 1.0) * slope_scale;
  std::sort(slopes.begin(), slopes.end());
  std::vector<double> knots(kSegments + 1);
  knots.front() = iv.a;
  knots.back() = iv.b;
  for (int i = 1; i < kSegments; ++i) {
    knots[i] = iv.a + iv.width() * (i + rng.uniform(-0.2, 0.2)) / kSegments;
  }
  std::sort(knots.begin(), knots.end());

  std::vector<double> values(kSegments + 1);
  values[0] = rng.uniform(0.2, 1.0);
  for (int i = 0; i < kSegments; ++i) {
    values[i + 1] = values[i] + slopes[i] * (knots[i + 1] - knots[i]);
  }
  const double vmin = *std::min_element(values.begin(), values.end());
  const double shift = (vmin < 0.1) ? 0.1 - vmin : 0.0;
  for (auto& v : values) v += shift;

  Generated g;
  g.fn.id = id;
  g.fn.eval = [knots, values, slopes](double x) {
    int seg = 0;
    while (seg + 1 < static_cast<int>(slopes.size()) && x > knots[seg + 1]) ++seg;
    return values[seg] + slopes[seg] * (x - knots[seg]);
  };
  CertSet c;
  c.add(Certificate::convex);
  g.fn.certificates = c;
  g.fn.domain = iv;
  g.fn.kinks.assign(knots.begin() + 1, knots.end() - 1);
  g.params = format_params({{"segments", double(kSegments)},
                            {"v0", values[0]},
                            {"slope0", slopes[0]},
                            {"slope3", slopes[3]}});
  return g;
}

Generated make_neg_log(SplitMix64& rng, const Interval& iv, const std::string& id) {
  const double x0 = iv.a - rng.uniform(0.3, 1.5) * std::max(1.0, 0.5 * iv.width());
  const double c = rng.uniform(0.3, 1.0);
  const double d = 0.2 + c * std::log((iv.b - x0) / (iv.midpoint() - x0));
  const double m = iv.midpoint();
  Generated g;
  g.fn.id = id;
  g.fn.eval = [=](double x) { return -c * std::log((x - x0) / (m - x0)) + d; };
  g.fn.deriv1 = [=](double x) { return -c / (x - x0); };
  g.fn.deriv2 = [=](double x) { return c / ((x - x0) * (x - x0)); };
  g.fn.certificates = smooth_certs();
  g.fn.domain = iv;
  g.params = format_params({{"x0", x0}, {"c", c}, {"d", d}, {"m", m}});
  return g;
}

Generated make_member(Family family, SplitMix64& rng, const Interval& iv,
                      const std::string& id) {
  switch (family) {
    case Family::affine: return make_affine(rng, iv, id);
    case Family::quadratic: return make_quadratic(rng, iv, id);
    case Family::even_power: return make_even_power(rng, iv, id);
    case Family::exponential: return make_exponential(rng, iv, id);
    case Family::power_p: return make_power_p(rng, iv, id);
    case Family::piecewise_linear_random: return make_piecewise_linear(rng, iv, id);
    case Family::neg_log: return make_neg_log(rng, iv, id);
  }
  throw std::invalid_argument("unknown family");
}

std::uint64_t stream_seed(std::uint64_t seed, Family family, int index) {
  return seed ^ (0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(family) * 1024ull +
                                          static_cast<std::uint64_t>(index) + 1ull));
}

std::string cert_string(const CertSet& c) {
  std::string out;
  auto append = [&out](const char* name) {
    if (!out.empty()) out += ",";
    out += name;
  };
  if (c.has(Certificate::convex)) append("convex");
  if (c.has(Certificate::abs_deriv_convex)) append("abs-deriv-convex");
  if (c.has(Certificate::second_deriv_bounded)) append("second-deriv-bounded");
  if (c.has(Certificate::symmetric_to_midpoint)) append("symmetric-to-midpoint");
  return out;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::affine: return "affine";
    case Family::quadratic: return "quadratic";
    case Family::even_power: return "even-power";
    case Family::exponential: return "exponential";
    case Family::power_p: return "power-p";
    case Family::piecewise_linear_random: return "piecewise-linear-random";
    case Family::neg_log: return "neg-log";
  }
  return "?";
}

std::vector<Family> smooth_families() {
  return {Family::affine,      Family::quadratic, Family::even_power,
          Family::exponential, Family::power_p,   Family::neg_log};
}

std::vector<Family> all_families() {
  auto fams = smooth_families();
  fams.push_back(Family::piecewise_linear_random);
  return fams;
}

std::vector<TestFunction> generate_convex(const CorpusSpec& spec) {
  if (spec.families.empty()) throw std::invalid_argument("corpus spec: empty family set");
  if (spec.count_per_family < 1) {
    throw std::invalid_argument("corpus spec: count_per_family must be >= 1");
  }
  std::vector<TestFunction> out;
  for (Family fam : spec.families) {
    for (int i = 0; i < spec.count_per_family; ++i) {
      SplitMix64 rng(stream_seed(spec.seed, fam, i));
      const std::string id = std::string(family_name(fam)) + "-" + std::to_string(i);
      out.push_back(make_member(fam, rng, spec.interval, id).fn);
    }
  }
  return out;
}

std::vector<WeightFunction> generate_weights(const Interval& interval, int count,
                                             std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("generate_weights: count must be >= 1");
  const double m = interval.midpoint();
  const double h = 0.5 * interval.width();
  const double w = interval.width();
  std::vector<WeightFunction> out;

  auto finish = [&](WeightFunction g) {
    double sup = 0.0;
    for (int i = 0; i <= 1024; ++i) {
      const double x = interval.a + w * i / 1024.0;
      sup = std::max(sup, std::fabs(g.eval(x)));
    }
    g.sup_norm = sup;
    g.symmetric = true;
    g.domain = interval;
    out.push_back(std::move(g));
  };

  WeightFunction unit;
  unit.id = "unit";
  unit.eval = [](double) { return 1.0; };
  finish(std::move(unit));
  if (static_cast<int>(out.size()) == count) return out;

  WeightFunction sq;
  sq.id = "square-dist";
  sq.eval = [m](double x) { return (x - m) * (x - m); };
  finish(std::move(sq));
  if (static_cast<int>(out.size()) == count) return out;

  WeightFunction cosine;
  cosine.id = "raised-cosine";
  cosine.eval = [m, w](double x) { return 1.0 + std::cos(M_PI * (x - m) / w); };
  finish(std::move(cosine));

  int idx = 0;
  while (static_cast<int>(out.size()) < count) {
    SplitMix64 rng(seed ^ (0xabcdef1234567ull + idx));
    const double c0 = rng.uniform(0.0, 1.0);
    const double c1 = rng.uniform(0.0, 1.0);
    const double c2 = rng.uniform(0.0, 1.0);
    WeightFunction poly;
    poly.id = "even-poly-" + std::to_string(idx);
    poly.eval = [=](double x) {
      const double s = (x - m) / h;
      const double s2 = s * s;
      return c0 + c1 * s2 + c2 * s2 * s2;
    };
    finish(std::move(poly));
    ++idx;
  }
  return out;
}

std::string corpus_manifest(const CorpusSpec& spec,
                            const std::vector<TestFunction>& corpus) {
  std::string out = "# corpus manifest\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "# seed=%llu interval=[%.17g,%.17g] count_per_family=%d\n",
                static_cast<unsigned long long>(spec.seed), spec.interval.a, spec.interval.b,
                spec.count_per_family);
  out += buf;
  // Regenerate parameter strings deterministically alongside the closures.
  std::size_t pos = 0;
  for (Family fam : spec.families) {
    for (int i = 0; i < spec.count_per_family; ++i) {
      SplitMix64 rng(stream_seed(spec.seed, fam, i));
      const std::string id = std::string(family_name(fam)) + "-" + std::to_string(i);
      Generated g = make_member(fam, rng, spec.interval, id);
      std::snprintf(buf, sizeof buf, "%s\t%s\t", family_name(fam), g.fn.id.c_str());
      out += buf;
      out += g.params;
      out += "\t";
      out += cert_string(g.fn.certificates);
      out += "\n";
      ++pos;
    }
  }
  if (pos != corpus.size()) {
    throw std::logic_error("corpus manifest: corpus does not match spec");
  }
  return out;
}

TestFunction as_power_composed(TestFunction f) {
  f.convention = DomainConvention::power_composed;
  return f;
}

}  // namespace fracint
