#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "kgen/inequality.hpp"
#include "oracles.hpp"

using namespace kgen;

namespace {

const KappaParams kFigure(2.0, 1.2, 0.75);

// Reference values for (2, 1.2, 0.75) from 30-digit arithmetic in the
// x domain (mean = int x f, Gini = 2 int x F f / mean - 1).
constexpr double kFigureMean = 1.2728630470569925;
constexpr double kFigureLorenzHalf = 0.24539863630230078;
constexpr double kFigureGini = 0.38266828746980977;

double exponential_lorenz(double u) { return u + (1.0 - u) * std::log1p(-u); }

}  // namespace

TEST_CASE("moments") {
  CHECK(moment(0.0, KappaGeneralized(kFigure)) == 1.0);
  CHECK(moment(1.0, Exponential(2.0)) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(moment(1.0, KappaGeneralized(kFigure)) == doctest::Approx(kFigureMean).epsilon(1e-9));
  // Weibull: E X^r = scale^r Gamma(1 + r / shape).
  for (double r : {-0.5, 0.5, 1.0, 2.0, 3.7}) {
    const Weibull w(1.6, 2.3);
    CHECK(moment(r, w) == doctest::Approx(std::pow(2.3, r) * std::tgamma(1.0 + r / 1.6)).epsilon(1e-8));
  }
  // Singh-Maddala: E X^r = b^r Gamma(1 + r/a) Gamma(q - r/a) / Gamma(q).
  const SinghMaddala sm(2.5, 1.3, 1.4);
  for (double r : {0.5, 1.0, 2.0, 3.0}) {
    const double exact = std::pow(1.3, r) * std::tgamma(1.0 + r / 2.5) * std::tgamma(1.4 - r / 2.5) / std::tgamma(1.4);
    CHECK(moment(r, sm) == doctest::Approx(exact).epsilon(1e-8));
  }
  // Near the existence boundary of the kappa-generalized law.
  const KappaGeneralized heavy(KappaParams(2.0, 1.0, 0.75));
  const double r = 2.5;
  const double reference = oracle::log_trapezoid_mass(
      [&](double x) { return std::pow(x, r) * heavy.pdf(x); }, 1.0, -40.0, 200.0, 0.002);
  CHECK(moment(r, heavy) == doctest::Approx(reference).epsilon(1e-7));

  CHECK_THROWS_AS(moment(2.0 / 0.75, KappaGeneralized(kFigure)), std::domain_error);
  CHECK_THROWS_AS(moment(3.0, KappaGeneralized(kFigure)), std::domain_error);
  CHECK_THROWS_AS(moment(-2.0, KappaGeneralized(kFigure)), std::domain_error);
}

TEST_CASE("moment matches the Monte Carlo mean") {
  const std::size_t n = 1000000;
  const auto xs = kgen_sample(n, kFigure, 31);
  double s = 0.0, s2 = 0.0;
  for (double x : xs) {
    s += x;
    s2 += x * x;
  }
  const double m = s / n;
  const double se = std::sqrt((s2 / n - m * m) / n);
  CHECK(std::abs(m - moment(1.0, KappaGeneralized(kFigure))) < 3.0 * se);
}

TEST_CASE("lorenz curve") {
  const KappaGeneralized d(kFigure);
  CHECK(lorenz(0.0, d) == 0.0);
  CHECK(lorenz(1.0, d) == 1.0);
  CHECK(lorenz(0.5, Exponential(3.0)) == doctest::Approx(0.15342640972002735).epsilon(1e-10));
  for (double u : {0.01, 0.3, 0.7, 0.9, 0.99, 0.999999}) {
    CHECK(lorenz(u, Exponential(0.4)) == doctest::Approx(exponential_lorenz(u)).epsilon(1e-9));
  }
  CHECK(lorenz(0.5, d) == doctest::Approx(kFigureLorenzHalf).epsilon(1e-9));
  CHECK_THROWS_AS(lorenz(1.5, d), std::domain_error);
  CHECK_THROWS_AS(lorenz(0.5, KappaGeneralized(KappaParams(0.7, 1.0, 0.8))), std::domain_error);

  SUBCASE("sampling oracle") {
    const auto xs = kgen_sample(1000000, kFigure, 77);
    CHECK(std::abs(sample_lorenz(0.5, WeightedSample::unweighted(xs)) - lorenz(0.5, d)) < 1e-3);
  }
}

TEST_CASE("lorenz convexity on a 1001-point grid") {
  for (double kappa : {0.0, 0.5, 0.75}) {
    const KappaGeneralized d(KappaParams(2.0, 1.2, kappa));
    std::vector<double> l(1001);
    for (int i = 0; i <= 1000; ++i) l[i] = lorenz(i / 1000.0, d);
    for (int i = 1; i < 1000; ++i) {
      CHECK(l[i - 1] - 2.0 * l[i] + l[i + 1] >= -1e-9);
      CHECK(l[i] <= i / 1000.0);
    }
  }
}

TEST_CASE("gini") {
  CHECK(gini(Exponential(5.0)) == doctest::Approx(0.5).epsilon(1e-9));
  for (double a : {0.7, 1.0, 2.0, 3.5}) {
    CHECK(gini(Weibull(a, 1.1)) == doctest::Approx(1.0 - std::pow(2.0, -1.0 / a)).epsilon(1e-9));
  }
  CHECK(gini(KappaGeneralized(kFigure)) == doctest::Approx(kFigureGini).epsilon(1e-9));
  CHECK_THROWS_AS(gini(KappaGeneralized(KappaParams(0.7, 1.0, 0.7))), std::domain_error);

  SUBCASE("equals 1 - 2 * area under the Lorenz curve") {
    // Composite Simpson on the Lorenz curve itself.
    const KappaGeneralized d(KappaParams(1.5, 1.0, 0.5));
    const int n = 2000;
    double area = lorenz(0.0, d) + lorenz(1.0, d);
    for (int i = 1; i < n; ++i) area += (i % 2 ? 4.0 : 2.0) * lorenz(static_cast<double>(i) / n, d);
    area /= 3.0 * n;
    CHECK(gini(d) == doctest::Approx(1.0 - 2.0 * area).epsilon(1e-5));
  }
  SUBCASE("equals the mean difference by Monte Carlo") {
    // G = E|X - Y| / (2 mean) with X, Y independent.
    const auto xs = kgen_sample(1000000, kFigure, 5);
    const auto ys = kgen_sample(1000000, kFigure, 6);
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) s += std::abs(xs[i] - ys[i]);
    const double g = s / xs.size() / (2.0 * kFigureMean);
    CHECK(std::abs(g - gini(KappaGeneralized(kFigure))) < 1e-3);
  }
  SUBCASE("sample gini of 10^6 draws") {
    const auto xs = kgen_sample(1000000, kFigure, 8);
    CHECK(std::abs(sample_gini(WeightedSample::unweighted(xs)) - gini(KappaGeneralized(kFigure))) < 1e-3);
  }
}

TEST_CASE("scale invariance in beta") {
  const KappaGeneralized a(KappaParams(1.8, 1.0, 0.4));
  const KappaGeneralized b(KappaParams(1.8, 2.0, 0.4));
  CHECK(std::abs(gini(a) - gini(b)) < 1e-10);
  for (double u : {0.1, 0.5, 0.9, 0.99}) CHECK(std::abs(lorenz(u, a) - lorenz(u, b)) < 1e-10);
}

TEST_CASE("percentile shares") {
  CHECK(percentile_share(0.0, 1.0, KappaGeneralized(kFigure)) == doctest::Approx(1.0));
  CHECK(percentile_share(0.9, 1.0, Exponential(1.0)) == doctest::Approx(0.33025850929940457).epsilon(1e-9));
  double prev = 0.0;
  for (double kappa : {0.0, 0.25, 0.5, 0.75}) {
    const double top = percentile_share(0.99, 1.0, KappaGeneralized(KappaParams(2.0, 1.2, kappa)));
    CHECK(top > prev);
    prev = top;
  }
  CHECK(prev == doctest::Approx(0.06924844725928236).epsilon(1e-8));
  CHECK_THROWS_AS(percentile_share(0.5, 0.5, Exponential(1.0)), std::domain_error);
}

TEST_CASE("sample_gini") {
  CHECK(sample_gini(WeightedSample::unweighted({1, 1, 1, 1})) == 0.0);
  CHECK(sample_gini(WeightedSample::unweighted({0, 1})) == doctest::Approx(0.5));
  // Mean-difference form with ties: sum |xi - xj| / (2 n^2 mean).
  const std::vector<double> v{3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5};
  double md = 0.0;
  for (double a : v) for (double b : v) md += std::abs(a - b);
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  CHECK(sample_gini(WeightedSample::unweighted(v)) ==
        doctest::Approx(md / (2.0 * v.size() * v.size() * mean)).epsilon(1e-14));
  // Integer weights behave like repeated records.
  CHECK(sample_gini(WeightedSample({1, 2, 7}, {2, 1, 3})) ==
        doctest::Approx(sample_gini(WeightedSample::unweighted({1, 1, 2, 7, 7, 7}))).epsilon(1e-14));

  const auto xs = kgen_sample(1000000, KappaParams(1.0, 3.0, 0.0), 12);
  CHECK(std::abs(sample_gini(WeightedSample::unweighted(xs)) - 0.5) < 2e-3);

  SUBCASE("invariances") {
    const WeightedSample base({0.5, 2.0, 2.0, 3.5, 10.0}, {1.0, 0.2, 3.0, 2.0, 0.7});
    std::vector<double> scaled_v, scaled_w;
    for (double x : base.values()) scaled_v.push_back(3.7 * x);
    for (double w : base.weights()) scaled_w.push_back(11.0 * w);
    const double g = sample_gini(base);
    CHECK(sample_gini(WeightedSample(scaled_v, base.weights())) == doctest::Approx(g).epsilon(1e-14));
    CHECK(sample_gini(WeightedSample(base.values(), scaled_w)) == doctest::Approx(g).epsilon(1e-14));
  }
  CHECK_THROWS_AS(sample_gini(WeightedSample({1.0, 2.0}, {0.0, 0.0})), std::invalid_argument);
  CHECK_THROWS_AS(sample_gini(WeightedSample::unweighted({0.0, 0.0})), std::invalid_argument);
  CHECK_THROWS_AS(sample_gini(WeightedSample::unweighted({-1.0, 2.0})), std::invalid_argument);
}

TEST_CASE("sample_lorenz") {
  const auto s = WeightedSample::unweighted({1, 1, 1, 1});
  CHECK(sample_lorenz(0.0, s) == 0.0);
  CHECK(sample_lorenz(0.25, s) == doctest::Approx(0.25));
  CHECK(sample_lorenz(1.0, s) == 1.0);
  CHECK(sample_lorenz(0.5, WeightedSample::unweighted({0, 1})) == doctest::Approx(0.0));
  CHECK(sample_lorenz(0.75, WeightedSample::unweighted({0, 1})) == doctest::Approx(0.5));
}
