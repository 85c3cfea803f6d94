#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kgen/data.hpp"
#include "kgen/distributions.hpp"

namespace kgen {

/// Numerical failure of an estimation procedure (as opposed to bad input).
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FitConfig {
  /// Iteration cap for each simplex run.
  std::size_t max_iterations = 5000;
  /// Relative vertex spread at convergence, in the transformed parameters.
  double param_tolerance = 1e-8;
  /// Absolute log-likelihood spread at convergence.
  double loglik_tolerance = 1e-8;
  /// Explicit starting point in natural parameters; std::nullopt selects
  /// initialize().
  std::optional<std::vector<double>> initial;
  /// Extra simplex runs from jittered copies of the starting point.
  std::size_t restarts = 3;
  /// 0 disables bootstrap standard errors; otherwise at least 50.
  std::size_t bootstrap_replicates = 0;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument on nonpositive tolerances or iterations.
  void validate() const;
};

struct FitResult {
  ModelKind kind = ModelKind::kgen;
  /// Natural parameters, in parameter_names(kind) order.
  std::vector<double> params;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  /// Kish effective sample size used by the BIC.
  double n_eff = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  std::optional<std::vector<double>> standard_errors;
  /// Best log-likelihood seen after each simplex iteration of the fit.
  std::vector<double> loglik_trace;

  std::size_t parameter_count() const { return params.size(); }
  Distribution distribution() const { return make_distribution(kind, params); }
};

/// sum_i w_i log f(x_i). Throws std::invalid_argument on values <= 0.
double log_likelihood(const WeightedSample& data, const KappaParams& params);
double log_likelihood(const WeightedSample& data, const Distribution& dist);

/// aic = 2k - 2 loglik; bic = k ln(n_eff) - 2 loglik.
double aic(double loglik, std::size_t k);
double bic(double loglik, std::size_t k, double n_eff);

/// Deterministic starting point in natural parameters.
///
/// For the kappa-generalized law: a Weibull fit by weighted moment matching
/// on log-values gives (alpha0, beta0), and kappa0 = min(0.75, alpha0 /
/// max(2, a)) with a the weighted Hill estimate on the top decile. With
/// fewer than 10 points the fallback (1, weighted mean, 0.25) is returned.
std::vector<double> initialize(const WeightedSample& data, ModelKind kind);

/// Weighted maximum likelihood by simplex descent on transformed
/// parameters (log for scales and shapes, logistic onto [0, 1 - 1e-6] for
/// kappa). Non-convergence is reported through FitResult::converged.
/// Throws std::invalid_argument for nonpositive values, all-equal data, or
/// fewer than 4 distinct values when fitting the kappa-generalized law.
FitResult fit_mle(const WeightedSample& data, ModelKind kind, const FitConfig& config = {});

/// Per-parameter bootstrap standard deviations from `bootstrap_replicates`
/// weighted resamples (indices drawn with probability proportional to
/// weight). Replicate r uses its own Rng stream, so the result does not
/// depend on how replicates are scheduled across threads. Throws
/// ConvergenceError when more than 20% of the refits fail to converge.
std::vector<double> stderr_bootstrap(const WeightedSample& data, ModelKind kind,
                                     const FitConfig& config);

}  // namespace kgen
