#include "kgen/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace kgen {

namespace {

constexpr double kQuadTolerance = 1e-12;

boost::math::quadrature::tanh_sinh<double>& integrator() {
  thread_local boost::math::quadrature::tanh_sinh<double> instance;
  return instance;
}

// int_0^u (1 - t)^g Q(t)^r dt, for g in {0, 1}.
double quantile_integral(const Distribution& dist, double r, double g, double u) {
  const double mid = std::min(u, 0.5);
  auto& quad = integrator();

  const auto lower_integrand = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double q = quantile(dist, t);
    if (q <= 0.0) return 0.0;
    return std::pow(1.0 - t, g) * std::pow(q, r);
  };
  double total = mid > 0.0 ? quad.integrate(lower_integrand, 0.0, mid, kQuadTolerance) : 0.0;
  if (u <= 0.5) return total;

  // Upper part, with 1 - t = s^m.
  const double tail = moment_range(dist).upper;
  double power = -g;
  if (std::isfinite(tail)) power += r / tail;
  const double m = power > 0.0 ? 1.0 / (1.0 - power) : 1.0;
  const double s_hi = std::pow(0.5, 1.0 / m);
  const double s_lo = u >= 1.0 ? 0.0 : std::pow(1.0 - u, 1.0 / m);

  const auto upper_integrand = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double v = std::pow(s, m);
    if (v <= 0.0 || v >= 1.0) return 0.0;
    const double q = upper_quantile(dist, v);
    if (!std::isfinite(q)) return 0.0;
    const double log_f = r * std::log(q) + g * std::log(v) + std::log(m) + (m - 1.0) * std::log(s);
    return std::exp(log_f);
  };
  total += quad.integrate(upper_integrand, s_lo, s_hi, kQuadTolerance);
  return total;
}

void require_mean(const Distribution& dist) {
  if (!moment_range(dist).contains(1.0)) {
    throw std::domain_error("mean does not exist for these parameters");
  }
}

struct SortedSample {
  std::vector<double> x;
  std::vector<double> w;
  double total_weight = 0.0;
  double total_income = 0.0;
};

SortedSample sorted_nonnegative(const WeightedSample& data) {
  if (data.empty()) throw std::invalid_argument("empty sample");
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& v = data.values();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  SortedSample s;
  s.x.reserve(order.size());
  s.w.reserve(order.size());
  for (std::size_t i : order) {
    if (v[i] < 0.0) throw std::invalid_argument("inequality measures require nonnegative values");
    s.x.push_back(v[i]);
    s.w.push_back(data.weights()[i]);
    s.total_weight += data.weights()[i];
    s.total_income += data.weights()[i] * v[i];
  }
  if (!(s.total_weight > 0.0)) throw std::invalid_argument("total weight must be positive");
  if (!(s.total_income > 0.0)) throw std::invalid_argument("weighted mean must be positive");
  return s;
}

}  // namespace

double moment(double r, const Distribution& dist) {
  if (!moment_range(dist).contains(r)) {
    throw std::domain_error("moment does not exist: order " + std::to_string(r) +
                            " is outside the admissible range");
  }
  if (r == 0.0) return 1.0;
  return quantile_integral(dist, r, 0.0, 1.0);
}

double mean(const Distribution& dist) {
  require_mean(dist);
  return moment(1.0, dist);
}

double lorenz(double u, const Distribution& dist) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("lorenz requires u in [0, 1]");
  require_mean(dist);
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  const double mu = moment(1.0, dist);
  return std::min(1.0, quantile_integral(dist, 1.0, 0.0, u) / mu);
}

double gini(const Distribution& dist) {
  require_mean(dist);
  const double mu = moment(1.0, dist);
  // int_0^1 L(u) du = (1/mu) int_0^1 (1 - t) Q(t) dt after swapping the order of integration.
  const double area = quantile_integral(dist, 1.0, 1.0, 1.0) / mu;
  return 1.0 - 2.0 * area;
}

double percentile_share(double p1, double p2, const Distribution& dist) {
  if (!(p1 >= 0.0 && p1 < p2 && p2 <= 1.0)) {
    throw std::domain_error("percentile_share requires 0 <= p1 < p2 <= 1");
  }
  return lorenz(p2, dist) - lorenz(p1, dist);
}

double sample_gini(const WeightedSample& data) {
  const SortedSample s = sorted_nonnegative(data);
  const double mu = s.total_income / s.total_weight;
  double cum = 0.0;
  double acc = 0.0;
  std::size_t i = 0;
  while (i < s.x.size()) {
    std::size_t j = i;
    double group_w = 0.0, group_wx = 0.0;
    while (j < s.x.size() && s.x[j] == s.x[i]) {
      group_w += s.w[j];
      group_wx += s.w[j] * s.x[j];
      ++j;
    }
    const double rank = (cum + 0.5 * group_w) / s.total_weight;
    acc += group_wx * (rank - 0.5);
    cum += group_w;
    i = j;
  }
  return 2.0 * acc / (s.total_weight * mu);
}

double sample_lorenz(double u, const WeightedSample& data) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("lorenz requires u in [0, 1]");
  const SortedSample s = sorted_nonnegative(data);
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  double cum_w = 0.0, cum_x = 0.0;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double next_w = cum_w + s.w[i];
    const double next_x = cum_x + s.w[i] * s.x[i];
    if (next_w / s.total_weight >= u) {
      const double frac = s.w[i] > 0.0 ? (u * s.total_weight - cum_w) / s.w[i] : 0.0;
      return (cum_x + frac * s.w[i] * s.x[i]) / s.total_income;
    }
    cum_w = next_w;
    cum_x = next_x;
  }
  return 1.0;
}

}  // namespace kgen
