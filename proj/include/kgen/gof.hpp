#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kgen/data.hpp"
#include "kgen/distributions.hpp"
#include "kgen/fitting.hpp"

namespace kgen {

using CdfFunction = std::function<double(double)>;

/// sup |F_n - F| over the data, F_n being the weighted empirical CDF built
/// from cumulative normalized weights. Both one-sided gaps at every jump are
/// examined, so the statistic is the exact supremum.
double ks_statistic(const WeightedSample& data, const CdfFunction& cdf);
double ks_statistic(const WeightedSample& data, const Distribution& dist);

/// KS supremum restricted to jumps at or above the weighted 90% point of the
/// data. A right-tail diagnostic only; it has no reference distribution.
double tail_ks_statistic(const WeightedSample& data, const Distribution& dist);

struct ComparisonRow {
  std::string model;
  std::size_t k = 0;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  double ks = 0.0;
  double tail_ks = 0.0;
  bool converged = false;
  /// 1-based position in the table.
  std::size_t rank = 0;
  std::vector<double> params;
};

/// Fits every model, then ranks converged fits by ascending AIC (ties broken
/// by model name); rows whose fit did not converge or failed are placed last
/// with converged = false. Requires at least two models.
std::vector<ComparisonRow> compare(const WeightedSample& data, const std::vector<ModelKind>& models,
                                   const FitConfig& config = {});

}  // namespace kgen
