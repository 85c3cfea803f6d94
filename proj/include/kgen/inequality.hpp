#pragma once

#include "kgen/data.hpp"
#include "kgen/distributions.hpp"

namespace kgen {

// Parametric moments and inequality measures, computed by tanh-sinh
// quadrature in the quantile domain: E[X^r] = int_0^1 Q(t)^r dt. Near t = 1
// the integrand of a Pareto-tailed law grows like (1 - t)^(-r/a), a being the
// tail exponent; the upper half of the range is integrated after the change
// of variable 1 - t = s^m, with m chosen to cancel that power.

/// E[X^r]. Throws std::domain_error("moment does not exist") unless r lies
/// inside moment_range(dist).
double moment(double r, const Distribution& dist);

double mean(const Distribution& dist);

/// Lorenz ordinate L(u) = (1/mean) int_0^u Q(t) dt, u in [0, 1].
double lorenz(double u, const Distribution& dist);

/// Gini index 1 - 2 int_0^1 L(u) du.
double gini(const Distribution& dist);

/// Income share of the population between probability levels p1 < p2.
double percentile_share(double p1, double p2, const Distribution& dist);

/// Weighted empirical Gini, 2 cov_w(x, F) / mean_w, where F is the weighted
/// midpoint rank; tied values share the midpoint rank of their group.
/// Requires nonnegative values and a positive weighted mean.
double sample_gini(const WeightedSample& data);

/// Piecewise-linear weighted empirical Lorenz curve at u in [0, 1].
double sample_lorenz(double u, const WeightedSample& data);

}  // namespace kgen
