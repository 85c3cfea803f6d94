#include "kgen/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kgen {

namespace {

enum class Stratum { negative, zero, positive };

Stratum classify(double x, double zero_threshold) {
  if (x == 0.0 || std::abs(x) < zero_threshold) return Stratum::zero;
  return x < 0.0 ? Stratum::negative : Stratum::positive;
}

struct Strata {
  std::vector<double> neg_values, neg_weights;
  std::vector<double> pos_values, pos_weights;
  double w_neg = 0.0, w_zero = 0.0, w_pos = 0.0;
};

Strata split(const WeightedSample& data, double zero_threshold) {
  Strata s;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double x = data.values()[i];
    const double w = data.weights()[i];
    switch (classify(x, zero_threshold)) {
      case Stratum::negative:
        s.neg_values.push_back(-x);
        s.neg_weights.push_back(w);
        s.w_neg += w;
        break;
      case Stratum::zero:
        s.w_zero += w;
        break;
      case Stratum::positive:
        s.pos_values.push_back(x);
        s.pos_weights.push_back(w);
        s.w_pos += w;
        break;
    }
  }
  return s;
}

double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

}  // namespace

NetWealthMixtureParams::NetWealthMixtureParams(double theta_neg, double theta_zero, double theta_pos,
                                               std::optional<Weibull> negative, KappaParams positive)
    : theta_neg_(theta_neg),
      theta_zero_(theta_zero),
      theta_pos_(theta_pos),
      negative_(std::move(negative)),
      positive_(positive) {
  if (!(theta_neg >= 0.0 && theta_zero >= 0.0 && theta_pos >= 0.0)) {
    throw std::domain_error("mixture weights must be nonnegative");
  }
  if (std::abs(theta_neg + theta_zero + theta_pos - 1.0) > 1e-12) {
    throw std::domain_error("mixture weights must sum to 1");
  }
  if (theta_neg > 0.0 && !negative_) {
    throw std::domain_error("theta_neg > 0 requires a negative-branch distribution");
  }
}

double mixture_cdf(double x, const NetWealthMixtureParams& m) {
  if (std::isnan(x)) throw std::domain_error("mixture_cdf: NaN argument");
  if (x < 0.0) {
    if (m.theta_neg() == 0.0) return 0.0;
    if (std::isinf(x)) return 0.0;
    return m.theta_neg() * m.negative()->ccdf(-x);
  }
  const double below = m.theta_neg() + m.theta_zero();
  if (x == 0.0) return below;
  return below + m.theta_pos() * KappaGeneralized(m.positive()).cdf(x);
}

double mixture_density(double x, const NetWealthMixtureParams& m) {
  if (!std::isfinite(x) || x == 0.0) throw std::domain_error("mixture_density: x must be finite and nonzero");
  if (x < 0.0) return m.theta_neg() == 0.0 ? 0.0 : m.theta_neg() * m.negative()->pdf(-x);
  return m.theta_pos() * KappaGeneralized(m.positive()).pdf(x);
}

double default_zero_threshold(const WeightedSample& data) {
  if (data.empty()) return 0.0;
  std::vector<double> a;
  a.reserve(data.size());
  for (double x : data.values()) a.push_back(std::abs(x));
  const auto mid = a.begin() + static_cast<std::ptrdiff_t>(a.size() / 2);
  std::nth_element(a.begin(), mid, a.end());
  double median = *mid;
  if (a.size() % 2 == 0) median = 0.5 * (median + *std::max_element(a.begin(), mid));
  return 1e-9 * median;
}

double mixture_log_likelihood(const WeightedSample& data, const NetWealthMixtureParams& m,
                              double zero_threshold) {
  const Strata s = split(data, zero_threshold);
  double ll = xlogy(s.w_neg, m.theta_neg()) + xlogy(s.w_zero, m.theta_zero()) +
              xlogy(s.w_pos, m.theta_pos());
  if (!s.neg_values.empty()) {
    if (m.theta_neg() == 0.0) return -INFINITY;
    ll += log_likelihood(WeightedSample(s.neg_values, s.neg_weights), *m.negative());
  }
  if (!s.pos_values.empty()) {
    ll += log_likelihood(WeightedSample(s.pos_values, s.pos_weights), m.positive());
  }
  return ll;
}

MixtureFitResult fit_mixture(const WeightedSample& data, const FitConfig& config,
                             std::optional<double> zero_threshold) {
  if (data.empty()) throw std::invalid_argument("cannot fit an empty sample");
  const double eps = zero_threshold.value_or(default_zero_threshold(data));
  const Strata s = split(data, eps);
  if (s.pos_values.empty() || s.w_pos <= 0.0) {
    throw std::invalid_argument("the positive stratum is empty; the kappa-generalized branch is mandatory");
  }
  const double total = s.w_neg + s.w_zero + s.w_pos;
  const double theta_neg = s.w_neg / total;
  const double theta_zero = s.w_zero / total;
  const double theta_pos = 1.0 - theta_neg - theta_zero;

  const WeightedSample pos_sample(s.pos_values, s.pos_weights);
  FitResult pos = fit_mle(pos_sample, ModelKind::kgen, config);

  std::optional<FitResult> neg;
  std::optional<Weibull> neg_dist;
  if (theta_neg > 0.0) {
    const WeightedSample neg_sample(s.neg_values, s.neg_weights);
    neg = fit_mle(neg_sample, ModelKind::weibull, config);
    neg_dist = Weibull(neg->params[0], neg->params[1]);
  }

  const KappaParams pos_params(pos.params[0], pos.params[1], pos.params[2]);
  NetWealthMixtureParams params(theta_neg, theta_zero, theta_pos, neg_dist, pos_params);

  const double loglik = xlogy(s.w_neg, theta_neg) + xlogy(s.w_zero, theta_zero) +
                        xlogy(s.w_pos, theta_pos) + pos.loglik + (neg ? neg->loglik : 0.0);
  const std::size_t free_weights = static_cast<std::size_t>(theta_neg > 0.0) +
                                   static_cast<std::size_t>(theta_zero > 0.0) +
                                   static_cast<std::size_t>(theta_pos > 0.0) - 1;
  const std::size_t k = pos.parameter_count() + (neg ? neg->parameter_count() : 0) + free_weights;
  const double n_eff = data.effective_size();

  return MixtureFitResult{std::move(params),
                          loglik,
                          aic(loglik, k),
                          bic(loglik, k, n_eff),
                          k,
                          pos.converged && (!neg || neg->converged),
                          pos.iterations + (neg ? neg->iterations : 0),
                          eps,
                          std::move(pos),
                          std::move(neg)};
}

std::vector<double> sample_mixture(std::size_t n, const NetWealthMixtureParams& m, std::uint64_t seed) {
  Rng component(seed, streams::kMixtureComponent);
  Rng positive(seed, streams::kPrimary);
  Rng negative(seed, streams::kMixtureNegative);
  const KappaGeneralized pos(m.positive());
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = component.uniform();
    if (c < m.theta_neg()) {
      out.push_back(-m.negative()->quantile(negative.uniform()));
    } else if (c < m.theta_neg() + m.theta_zero()) {
      out.push_back(0.0);
    } else {
      out.push_back(pos.quantile(positive.uniform()));
    }
  }
  return out;
}

}  // namespace kgen
