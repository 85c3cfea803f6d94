#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "kgen/mixture.hpp"
#include "oracles.hpp"

using namespace kgen;

namespace {

const KappaParams kPos(2.0, 1.2, 0.75);
const Weibull kNeg(1.3, 0.4);

NetWealthMixtureParams standard() { return NetWealthMixtureParams(0.2, 0.05, 0.75, kNeg, kPos); }

}  // namespace

TEST_CASE("weights are validated") {
  CHECK_THROWS_AS(NetWealthMixtureParams(0.2, 0.05, 0.70, kNeg, kPos), std::domain_error);
  CHECK_THROWS_AS(NetWealthMixtureParams(-0.1, 0.1, 1.0, kNeg, kPos), std::domain_error);
  CHECK_THROWS_AS(NetWealthMixtureParams(0.2, 0.0, 0.8, std::nullopt, kPos), std::domain_error);
  CHECK_NOTHROW(NetWealthMixtureParams(0.0, 0.0, 1.0, std::nullopt, kPos));
}

TEST_CASE("mixture cdf limits and the atom") {
  const auto m = standard();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(mixture_cdf(-inf, m) == 0.0);
  CHECK(mixture_cdf(inf, m) == 1.0);
  CHECK(mixture_cdf(-1e300, m) == doctest::Approx(0.0));
  CHECK(mixture_cdf(1e300, m) == doctest::Approx(1.0));
  CHECK(mixture_cdf(0.0, m) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(mixture_cdf(-1e-300, m) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(mixture_cdf(-1.0, m) == doctest::Approx(0.2 * kNeg.ccdf(1.0)).epsilon(1e-15));
}

TEST_CASE("degenerate mixture reduces to kgen_cdf") {
  const NetWealthMixtureParams m(0.0, 0.0, 1.0, std::nullopt, kPos);
  for (double x : {1e-3, 0.5, 1.2, 7.0, 1e4}) CHECK(mixture_cdf(x, m) == kgen_cdf(x, kPos));
  CHECK(mixture_cdf(-3.0, m) == 0.0);
}

TEST_CASE("mixture cdf is monotone on a fine grid with the right jump") {
  const auto m = standard();
  const double b = kPos.beta();
  constexpr int kPoints = 10000;
  double prev = -1.0;
  double below = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double x = -10.0 * b + 20.0 * b * i / (kPoints - 1);
    const double c = mixture_cdf(x, m);
    CHECK(c >= prev);
    prev = c;
    if (x < 0.0) below = c;
  }
  const double left = mixture_cdf(-std::numeric_limits<double>::denorm_min(), m);
  CHECK(std::abs(mixture_cdf(0.0, m) - left - m.theta_zero()) <= 1e-12);
  CHECK(below <= left);
}

TEST_CASE("continuous mass plus the atom is one") {
  const auto m = standard();
  const double neg = oracle::log_trapezoid_mass([&](double t) { return mixture_density(-t, m); }, kNeg.scale());
  const double pos = oracle::log_trapezoid_mass([&](double t) { return mixture_density(t, m); }, kPos.beta());
  CHECK(std::abs(neg + pos + m.theta_zero() - 1.0) <= 1e-8);
  CHECK(neg == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("likelihood factorizes over sign strata") {
  const auto m = standard();
  const auto xs = sample_mixture(5000, m, 4);
  std::vector<double> w(xs.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 0.5 + static_cast<double>(i % 4);
  const WeightedSample data(xs, w);

  double neg = 0.0, zero = 0.0, pos = 0.0, wn = 0.0, wz = 0.0, wp = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < 0.0) {
      neg += w[i] * std::log(kNeg.pdf(-xs[i]));
      wn += w[i];
    } else if (xs[i] == 0.0) {
      wz += w[i];
    } else {
      pos += w[i] * std::log(kgen_pdf(xs[i], kPos));
      wp += w[i];
    }
  }
  const double expected = neg + zero + pos + wn * std::log(0.2) + wz * std::log(0.05) + wp * std::log(0.75);
  const double got = mixture_log_likelihood(data, m, 0.0);
  CHECK(std::abs(got - expected) <= 1e-8 * std::abs(expected));
}

TEST_CASE("stratified fit") {
  const auto m = standard();
  const auto data = WeightedSample::unweighted(sample_mixture(40000, m, 8));
  double n_neg = 0, n_zero = 0, n_pos = 0;
  for (double x : data.values()) (x < 0.0 ? n_neg : x == 0.0 ? n_zero : n_pos) += 1.0;
  const auto fit = fit_mixture(data);
  const double n = static_cast<double>(data.size());
  CHECK(fit.params.theta_neg() == n_neg / n);
  CHECK(fit.params.theta_zero() == n_zero / n);
  CHECK(fit.params.theta_pos() == doctest::Approx(n_pos / n).epsilon(1e-15));
  CHECK(n_pos >= 10000);
  const auto& p = fit.params.positive();
  CHECK(std::abs(p.alpha() / 2.0 - 1.0) < 0.05);
  CHECK(std::abs(p.beta() / 1.2 - 1.0) < 0.05);
  CHECK(std::abs(p.kappa().value() / 0.75 - 1.0) < 0.05);
  REQUIRE(fit.params.negative());
  CHECK(std::abs(fit.params.negative()->shape() / 1.3 - 1.0) < 0.05);
  CHECK(fit.parameter_count == 7);
  CHECK(fit.loglik == doctest::Approx(mixture_log_likelihood(data, fit.params, fit.zero_threshold)).epsilon(1e-12));
  CHECK(fit.aic == doctest::Approx(14.0 - 2.0 * fit.loglik));
}

TEST_CASE("all-positive data matches fit_mle") {
  const auto data = WeightedSample::unweighted(kgen_sample(3000, kPos, 2));
  const auto mix = fit_mixture(data);
  const auto plain = fit_mle(data, ModelKind::kgen);
  CHECK(mix.params.theta_pos() == 1.0);
  CHECK(mix.params.theta_zero() == 0.0);
  CHECK(mix.params.theta_neg() == 0.0);
  CHECK(mix.positive.params == plain.params);
  CHECK(mix.loglik == plain.loglik);
  CHECK(mix.parameter_count == 3);
}

TEST_CASE("zero threshold") {
  const auto data = WeightedSample::unweighted({-2.0, 1e-12, 0.0, 3.0, 4.0, 5.0, 6.0});
  CHECK(default_zero_threshold(data) == doctest::Approx(4e-9));
  const auto fit = fit_mixture(WeightedSample::unweighted({-2.0, -1.0, -3.0, 1e-12, 0.0, 3.0, 4.0, 5.0, 6.0, 2.5}));
  CHECK(fit.params.theta_zero() == doctest::Approx(0.2));
  const auto strict = fit_mixture(WeightedSample::unweighted({-2.0, -1.0, -3.0, 1e-12, 0.0, 3.0, 4.0, 5.0, 6.0, 2.5}),
                                  FitConfig{}, 0.0);
  CHECK(strict.params.theta_zero() == doctest::Approx(0.1));
}

TEST_CASE("empty positive stratum is an error") {
  CHECK_THROWS_AS(fit_mixture(WeightedSample::unweighted({-1.0, -2.0, 0.0})), std::invalid_argument);
}

TEST_CASE("mixture sampling") {
  const NetWealthMixtureParams zeros(0.0, 1.0, 0.0, std::nullopt, kPos);
  for (double x : sample_mixture(1000, zeros, 1)) CHECK(x == 0.0);

  const NetWealthMixtureParams pure(0.0, 0.0, 1.0, std::nullopt, kPos);
  CHECK(sample_mixture(500, pure, 17) == kgen_sample(500, kPos, 17));

  const auto m = standard();
  constexpr std::size_t n = 100000;
  const auto xs = sample_mixture(n, m, 5);
  CHECK(xs == sample_mixture(n, m, 5));
  double c_neg = 0, c_zero = 0, c_pos = 0;
  for (double x : xs) (x < 0.0 ? c_neg : x == 0.0 ? c_zero : c_pos) += 1.0;
  for (auto [count, theta] : {std::pair{c_neg, 0.2}, std::pair{c_zero, 0.05}, std::pair{c_pos, 0.75}}) {
    CHECK(std::abs(count / n - theta) <= 3.0 * std::sqrt(theta * (1.0 - theta) / n));
  }
}
