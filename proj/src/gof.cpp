#include "kgen/gof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace kgen {

namespace {

struct Jump {
  double x;
  double before;  // F_n just left of x
  double after;   // F_n at x
};

std::vector<Jump> empirical_jumps(const WeightedSample& data) {
  if (data.empty()) throw std::invalid_argument("ks_statistic: empty data");
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& v = data.values();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  const double total = data.total_weight();
  std::vector<Jump> jumps;
  double cum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double x = v[order[i]];
    const double before = cum / total;
    while (i < order.size() && v[order[i]] == x) cum += data.weights()[order[i++]];
    jumps.push_back({x, before, std::min(1.0, cum / total)});
  }
  return jumps;
}

double sup_gap(const std::vector<Jump>& jumps, const CdfFunction& cdf, double from_level) {
  double d = 0.0;
  for (const Jump& j : jumps) {
    if (j.after < from_level) continue;
    const double f = cdf(j.x);
    d = std::max({d, std::abs(j.after - f), std::abs(f - j.before)});
  }
  return d;
}

CdfFunction as_cdf(const Distribution& dist) {
  return [&dist](double x) { return x <= 0.0 ? 0.0 : cdf(dist, x); };
}

}  // namespace

double ks_statistic(const WeightedSample& data, const CdfFunction& cdf) {
  return sup_gap(empirical_jumps(data), cdf, 0.0);
}

double ks_statistic(const WeightedSample& data, const Distribution& dist) {
  return ks_statistic(data, as_cdf(dist));
}

double tail_ks_statistic(const WeightedSample& data, const Distribution& dist) {
  return sup_gap(empirical_jumps(data), as_cdf(dist), 0.9);
}

std::vector<ComparisonRow> compare(const WeightedSample& data, const std::vector<ModelKind>& models,
                                   const FitConfig& config) {
  if (models.size() < 2) throw std::invalid_argument("compare needs at least two models");
  std::vector<ComparisonRow> rows;
  rows.reserve(models.size());
  for (ModelKind kind : models) {
    ComparisonRow row;
    row.model = std::string(model_name(kind));
    row.k = parameter_count(kind);
    try {
      const FitResult fit = fit_mle(data, kind, config);
      const Distribution dist = fit.distribution();
      row.loglik = fit.loglik;
      row.aic = fit.aic;
      row.bic = fit.bic;
      row.ks = ks_statistic(data, dist);
      row.tail_ks = tail_ks_statistic(data, dist);
      row.converged = fit.converged;
      row.params = fit.params;
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.loglik = row.aic = row.bic = row.ks = row.tail_ks = nan;
      row.converged = false;
    }
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    if (a.converged != b.converged) return a.converged;
    if (a.converged && a.aic != b.aic) return a.aic < b.aic;
    return a.model < b.model;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = i + 1;
  return rows;
}

}  // namespace kgen
