#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kgen/data.hpp"
#include "kgen/distributions.hpp"
#include "kgen/fitting.hpp"

namespace kgen {

/// Net-wealth law on the real line: with probability theta_neg a debt whose
/// magnitude is Weibull, with probability theta_zero exactly zero, and with
/// probability theta_pos a kappa-generalized positive amount.
class NetWealthMixtureParams {
 public:
  /// Throws std::domain_error unless the weights are nonnegative and sum to
  /// one (within 1e-12), and `negative` is present whenever theta_neg > 0.
  NetWealthMixtureParams(double theta_neg, double theta_zero, double theta_pos,
                         std::optional<Weibull> negative, KappaParams positive);

  double theta_neg() const { return theta_neg_; }
  double theta_zero() const { return theta_zero_; }
  double theta_pos() const { return theta_pos_; }
  const std::optional<Weibull>& negative() const { return negative_; }
  const KappaParams& positive() const { return positive_; }

 private:
  double theta_neg_;
  double theta_zero_;
  double theta_pos_;
  std::optional<Weibull> negative_;
  KappaParams positive_;
};

/// Right-continuous CDF; jumps by theta_zero at 0. x = +-inf give 1 and 0.
double mixture_cdf(double x, const NetWealthMixtureParams& m);

/// Density of the continuous part (without the atom) at x != 0.
double mixture_density(double x, const NetWealthMixtureParams& m);

/// Values with |x| below this count as the atom at zero: 1e-9 times the
/// median absolute value (0 when the median is 0, so only exact zeros count).
double default_zero_threshold(const WeightedSample& data);

/// Joint weighted log-likelihood: stratum log-densities plus the multinomial
/// term sum_s W_s log theta_s.
double mixture_log_likelihood(const WeightedSample& data, const NetWealthMixtureParams& m,
                              double zero_threshold);

struct MixtureFitResult {
  NetWealthMixtureParams params;
  double loglik;
  double aic;
  double bic;
  std::size_t parameter_count;
  bool converged;
  std::size_t iterations;
  double zero_threshold;
  FitResult positive;
  std::optional<FitResult> negative;
};

/// Plug-in weights from the weighted sign proportions; the branches are
/// fitted by weighted MLE on their own strata. The likelihood factorizes over
/// the strata, so this is the joint MLE. Throws std::invalid_argument when
/// the positive stratum is empty.
MixtureFitResult fit_mixture(const WeightedSample& data, const FitConfig& config = {},
                             std::optional<double> zero_threshold = std::nullopt);

/// Component labels come from stream 1 of `seed`, positive draws from stream
/// 0 (so theta = (0, 0, 1) reproduces kgen_sample) and debts from stream 2.
std::vector<double> sample_mixture(std::size_t n, const NetWealthMixtureParams& m, std::uint64_t seed);

}  // namespace kgen
