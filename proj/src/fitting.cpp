#include "kgen/fitting.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "kgen/optimizer.hpp"
#include "kgen/rng.hpp"

namespace kgen {

namespace {

constexpr double kKappaMax = 1.0 - 1e-6;
constexpr double kKappaFloor = 1e-12;
constexpr double kJitter = 0.2;

double logistic(double t) { return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t)); }

// Natural <-> unconstrained coordinates.
std::vector<double> to_unconstrained(ModelKind kind, const std::vector<double>& p) {
  std::vector<double> t(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) t[i] = std::log(p[i]);
  if (kind == ModelKind::kgen) {
    const double frac = std::clamp(p[2] / kKappaMax, kKappaFloor, 1.0 - kKappaFloor);
    t[2] = std::log(frac / (1.0 - frac));
  }
  return t;
}

std::vector<double> to_natural(ModelKind kind, const std::vector<double>& t) {
  std::vector<double> p(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) p[i] = std::exp(t[i]);
  if (kind == ModelKind::kgen) p[2] = kKappaMax * logistic(t[2]);
  return p;
}

struct LogData {
  std::vector<double> log_x;
  std::vector<double> w;
};

LogData prepare(const WeightedSample& data) {
  data.require_positive();
  LogData d;
  d.log_x.reserve(data.size());
  for (double x : data.values()) d.log_x.push_back(std::log(x));
  d.w = data.weights();
  return d;
}

double sum_log_pdf(const Distribution& dist, const LogData& d) {
  return std::visit(
      [&](const auto& model) {
        double s = 0.0;
        for (std::size_t i = 0; i < d.log_x.size(); ++i) {
          if (d.w[i] != 0.0) s += d.w[i] * model.log_pdf_at_log(d.log_x[i]);
        }
        return s;
      },
      dist);
}

struct Moments {
  double mean;
  double sd;
};

Moments weighted_log_moments(const WeightedSample& data) {
  double sw = 0.0, s1 = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    sw += data.weights()[i];
    s1 += data.weights()[i] * std::log(data.values()[i]);
  }
  const double m = s1 / sw;
  double s2 = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double dl = std::log(data.values()[i]) - m;
    s2 += data.weights()[i] * dl * dl;
  }
  return {m, std::sqrt(s2 / sw)};
}

double weighted_median(const WeightedSample& data) {
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& v = data.values();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  const double half = 0.5 * data.total_weight();
  double cum = 0.0;
  for (std::size_t i : order) {
    cum += data.weights()[i];
    if (cum >= half) return v[i];
  }
  return v[order.back()];
}

// Weighted Hill estimate of the Pareto exponent above the weighted 90% quantile.
double hill_top_decile(const WeightedSample& data) {
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& v = data.values();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  const double top = 0.1 * data.total_weight();
  double cum = 0.0;
  std::size_t k = 0;
  while (k < order.size() && cum < top) cum += data.weights()[order[k++]];
  if (k >= order.size()) return std::numeric_limits<double>::infinity();
  const double threshold = v[order[k]];
  double sw = 0.0, sl = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sw += data.weights()[order[i]];
    sl += data.weights()[order[i]] * std::log(v[order[i]] / threshold);
  }
  return sl > 0.0 ? sw / sl : std::numeric_limits<double>::infinity();
}

void check_data(const WeightedSample& data, ModelKind kind) {
  if (data.empty()) throw std::invalid_argument("cannot fit an empty sample");
  data.require_positive();
  const std::size_t distinct = data.distinct_count();
  if (distinct < 2) throw std::invalid_argument("degenerate data: all values are equal");
  if (kind == ModelKind::kgen && distinct < 4) {
    throw std::invalid_argument("the kappa-generalized fit needs at least 4 distinct values");
  }
}

FitResult finish(ModelKind kind, std::vector<double> params, double loglik, double n_eff) {
  FitResult r;
  r.kind = kind;
  r.params = std::move(params);
  r.loglik = loglik;
  r.n_eff = n_eff;
  r.aic = aic(loglik, r.params.size());
  r.bic = bic(loglik, r.params.size(), n_eff);
  return r;
}

FitResult fit_point(const WeightedSample& data, ModelKind kind, const FitConfig& config) {
  check_data(data, kind);
  const LogData d = prepare(data);

  std::vector<double> start = config.initial ? *config.initial : initialize(data, kind);
  if (start.size() != parameter_count(kind)) {
    throw std::invalid_argument("initial point has the wrong number of parameters");
  }
  make_distribution(kind, start);  // validates the explicit start

  const auto objective = [&](const std::vector<double>& t) {
    const auto p = to_natural(kind, t);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const bool kappa_slot = kind == ModelKind::kgen && i == 2;
      if (!std::isfinite(p[i]) || (p[i] <= 0.0 && !kappa_slot)) {
        return std::numeric_limits<double>::infinity();
      }
    }
    return -sum_log_pdf(make_distribution(kind, p), d);
  };

  SimplexOptions opts;
  opts.max_iterations = config.max_iterations;
  opts.x_tolerance = config.param_tolerance;
  opts.f_tolerance = config.loglik_tolerance;

  const std::vector<double> t0 = to_unconstrained(kind, start);
  Rng jitter(config.seed, streams::kFitJitter);

  FitResult out;
  SimplexResult best;
  bool have_best = false;
  std::size_t iterations = 0;
  std::vector<double> trace;
  const auto absorb = [&](const SimplexResult& run) {
    iterations += run.iterations;
    for (double f : run.trace) {
      const double ll = -f;
      trace.push_back(trace.empty() ? ll : std::max(trace.back(), ll));
    }
    if (!have_best || run.value < best.value) {
      best = run;
      have_best = true;
    }
  };

  absorb(nelder_mead(objective, t0, opts));
  for (std::size_t r = 0; r < config.restarts; ++r) {
    std::vector<double> t = t0;
    for (double& v : t) v += kJitter * (2.0 * jitter.uniform() - 1.0);
    absorb(nelder_mead(objective, t, opts));
  }
  // Fresh simplex around the best point guards against a collapsed simplex.
  const SimplexResult polish = nelder_mead(objective, best.x, opts);
  absorb(polish);

  if (!std::isfinite(best.value)) {
    throw ConvergenceError("likelihood is not finite anywhere the optimizer looked");
  }
  out = finish(kind, to_natural(kind, best.x), -best.value, data.effective_size());
  out.converged = polish.converged;
  out.iterations = iterations;
  out.loglik_trace = std::move(trace);
  return out;
}

WeightedSample resample(const WeightedSample& data, const std::vector<double>& cumulative, Rng& rng) {
  const std::size_t n = data.size();
  const double total = cumulative.back();
  const double unit = total / static_cast<double>(n);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double target = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.end()) --it;
    values[i] = data.values()[static_cast<std::size_t>(it - cumulative.begin())];
  }
  return WeightedSample(std::move(values), std::vector<double>(n, unit));
}

std::vector<double> bootstrap_from(const WeightedSample& data, ModelKind kind, const FitConfig& config,
                                   const std::vector<double>& estimate) {
  const std::size_t replicates = config.bootstrap_replicates;
  if (replicates < 50) throw std::invalid_argument("bootstrap needs at least 50 replicates");

  std::vector<double> cumulative(data.size());
  std::partial_sum(data.weights().begin(), data.weights().end(), cumulative.begin());

  FitConfig refit = config;
  refit.bootstrap_replicates = 0;
  refit.initial = estimate;
  if (kind == ModelKind::kgen) (*refit.initial)[2] = std::max((*refit.initial)[2], 1e-6);

  struct Replicate {
    std::vector<double> params;
    bool ok = false;
  };
  std::vector<Replicate> out(replicates);
  const auto work = [&](std::size_t r) {
    Rng rng(config.seed, streams::kBootstrapBase + r);
    try {
      const FitResult f = fit_point(resample(data, cumulative, rng), kind, refit);
      out[r] = {f.params, f.converged};
    } catch (const std::exception&) {
      out[r] = {{}, false};
    }
  };

  const std::size_t threads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, replicates);
  if (threads == 1) {
    for (std::size_t r = 0; r < replicates; ++r) work(r);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t r = t; r < replicates; r += threads) work(r);
      });
    }
  }

  const std::size_t failed = static_cast<std::size_t>(
      std::count_if(out.begin(), out.end(), [](const Replicate& r) { return !r.ok; }));
  if (5 * failed > replicates) {
    throw ConvergenceError("bootstrap: " + std::to_string(failed) + " of " +
                             std::to_string(replicates) + " replicate fits did not converge");
  }

  const std::size_t k = estimate.size();
  std::vector<double> se(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    double s = 0.0, s2 = 0.0, m = 0.0;
    for (const auto& r : out) {
      if (!r.ok) continue;
      s += r.params[j];
      m += 1.0;
    }
    const double mean = s / m;
    for (const auto& r : out) {
      if (!r.ok) continue;
      s2 += (r.params[j] - mean) * (r.params[j] - mean);
    }
    se[j] = std::sqrt(s2 / (m - 1.0));
  }
  return se;
}

}  // namespace

void FitConfig::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (!(param_tolerance > 0.0)) throw std::invalid_argument("param_tolerance must be positive");
  if (!(loglik_tolerance > 0.0)) throw std::invalid_argument("loglik_tolerance must be positive");
  if (bootstrap_replicates != 0 && bootstrap_replicates < 50) {
    throw std::invalid_argument("bootstrap_replicates must be 0 or at least 50");
  }
}

double log_likelihood(const WeightedSample& data, const Distribution& dist) {
  return sum_log_pdf(dist, prepare(data));
}

double log_likelihood(const WeightedSample& data, const KappaParams& params) {
  return log_likelihood(data, KappaGeneralized(params));
}

double aic(double loglik, std::size_t k) { return 2.0 * static_cast<double>(k) - 2.0 * loglik; }

double bic(double loglik, std::size_t k, double n_eff) {
  return static_cast<double>(k) * std::log(n_eff) - 2.0 * loglik;
}

std::vector<double> initialize(const WeightedSample& data, ModelKind kind) {
  data.require_positive();
  if (data.size() < 10) {
    const double m = data.weighted_mean();
    switch (kind) {
      case ModelKind::kgen: return {1.0, m, 0.25};
      case ModelKind::weibull: return {1.0, m};
      case ModelKind::exponential: return {m};
      case ModelKind::singh_maddala:
      case ModelKind::dagum: return {1.0, m, 1.0};
    }
  }
  const Moments lm = weighted_log_moments(data);
  double alpha0 = lm.sd > 0.0 ? std::numbers::pi / (std::sqrt(6.0) * lm.sd) : 1.0;
  alpha0 = std::clamp(alpha0, 1e-3, 1e3);
  const double beta0 = std::exp(lm.mean + std::numbers::egamma / alpha0);
  switch (kind) {
    case ModelKind::kgen: {
      const double hill = hill_top_decile(data);
      const double kappa0 = std::min(0.75, alpha0 / std::max(2.0, hill));
      return {alpha0, beta0, std::max(kappa0, 1e-6)};
    }
    case ModelKind::weibull: return {alpha0, beta0};
    case ModelKind::exponential: return {data.weighted_mean()};
    case ModelKind::singh_maddala:
    case ModelKind::dagum: return {alpha0, weighted_median(data), 1.0};
  }
  throw std::invalid_argument("unknown model kind");
}

FitResult fit_mle(const WeightedSample& data, ModelKind kind, const FitConfig& config) {
  config.validate();
  FitResult result = fit_point(data, kind, config);
  if (config.bootstrap_replicates > 0) {
    result.standard_errors = bootstrap_from(data, kind, config, result.params);
  }
  return result;
}

std::vector<double> stderr_bootstrap(const WeightedSample& data, ModelKind kind,
                                     const FitConfig& config) {
  config.validate();
  FitConfig point = config;
  point.bootstrap_replicates = 0;
  const FitResult estimate = fit_point(data, kind, point);
  return bootstrap_from(data, kind, config, estimate.params);
}

}  // namespace kgen
