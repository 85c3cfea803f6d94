#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kgen/kappa_math.hpp"
#include "kgen/rng.hpp"

namespace kgen {

/// (alpha, beta, kappa) of the kappa-generalized law. alpha is the shape,
/// beta the scale in income units, kappa the upper-tail deformation.
class KappaParams {
 public:
  /// Throws std::domain_error unless alpha > 0, beta > 0 (finite) and 0 <= kappa < 1.
  KappaParams(double alpha, double beta, double kappa);
  KappaParams(double alpha, double beta, Kappa kappa);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  Kappa kappa() const { return kappa_; }

  friend bool operator==(const KappaParams&, const KappaParams&) = default;

 private:
  double alpha_;
  double beta_;
  Kappa kappa_;
};

/// Moments E[X^r] exist exactly for lower < r < upper.
struct MomentRange {
  double lower;
  double upper;
  bool contains(double r) const { return r > lower && r < upper; }
};

// Every distribution below shares one contract: support (0, inf); pdf,
// log_pdf, cdf and ccdf throw std::domain_error outside their domain;
// quantile(u) takes u in [0, 1) and upper_quantile(v) returns quantile(1 - v)
// for v in (0, 1] without forming 1 - v. log_pdf_at_log(log x) is the
// hot-path log density used by the likelihood.

/// CDF 1 - exp_k(-(x/beta)^alpha).
class KappaGeneralized {
 public:
  explicit KappaGeneralized(KappaParams params);

  const KappaParams& params() const { return params_; }

  double pdf(double x) const;
  double log_pdf(double x) const;
  double log_pdf_at_log(double log_x) const;
  double cdf(double x) const;
  double ccdf(double x) const;
  double log_ccdf(double x) const;
  double quantile(double u) const;
  double upper_quantile(double v) const;
  MomentRange moment_range() const;
  /// Pareto exponent alpha/kappa of the upper tail. Throws std::domain_error
  /// when kappa is below the ordinary-exponential switch, where the tail is a
  /// stretched exponential.
  double tail_exponent() const;

  friend bool operator==(const KappaGeneralized&, const KappaGeneralized&) = default;

 private:
  KappaParams params_;
  double log_alpha_;
  double log_beta_;
  double log_kappa_;
};

/// CDF 1 - exp(-(x/scale)^shape).
class Weibull {
 public:
  Weibull(double shape, double scale);

  double shape() const { return shape_; }
  double scale() const { return scale_; }

  double pdf(double x) const;
  double log_pdf(double x) const;
  double log_pdf_at_log(double log_x) const;
  double cdf(double x) const;
  double ccdf(double x) const;
  double quantile(double u) const;
  double upper_quantile(double v) const;
  MomentRange moment_range() const;

  friend bool operator==(const Weibull&, const Weibull&) = default;

 private:
  double shape_;
  double scale_;
  double log_shape_;
  double log_scale_;
};

/// CDF 1 - exp(-x/scale).
class Exponential {
 public:
  explicit Exponential(double scale);

  double scale() const { return scale_; }

  double pdf(double x) const;
  double log_pdf(double x) const;
  double log_pdf_at_log(double log_x) const;
  double cdf(double x) const;
  double ccdf(double x) const;
  double quantile(double u) const;
  double upper_quantile(double v) const;
  MomentRange moment_range() const;

  friend bool operator==(const Exponential&, const Exponential&) = default;

 private:
  double scale_;
  double log_scale_;
};

/// CDF 1 - [1 + (x/b)^a]^(-q).
class SinghMaddala {
 public:
  SinghMaddala(double a, double b, double q);

  double a() const { return a_; }
  double b() const { return b_; }
  double q() const { return q_; }

  double pdf(double x) const;
  double log_pdf(double x) const;
  double log_pdf_at_log(double log_x) const;
  double cdf(double x) const;
  double ccdf(double x) const;
  double quantile(double u) const;
  double upper_quantile(double v) const;
  MomentRange moment_range() const;

  friend bool operator==(const SinghMaddala&, const SinghMaddala&) = default;

 private:
  double a_;
  double b_;
  double q_;
  double log_aq_;
  double log_b_;
};

/// Dagum type I: CDF [1 + (x/b)^(-a)]^(-p).
class DagumI {
 public:
  DagumI(double a, double b, double p);

  double a() const { return a_; }
  double b() const { return b_; }
  double p() const { return p_; }

  double pdf(double x) const;
  double log_pdf(double x) const;
  double log_pdf_at_log(double log_x) const;
  double cdf(double x) const;
  double ccdf(double x) const;
  double quantile(double u) const;
  double upper_quantile(double v) const;
  MomentRange moment_range() const;

  friend bool operator==(const DagumI&, const DagumI&) = default;

 private:
  double a_;
  double b_;
  double p_;
  double log_ap_;
  double log_b_;
};

using BaselineModel = std::variant<Weibull, Exponential, SinghMaddala, DagumI>;
using Distribution = std::variant<KappaGeneralized, Weibull, Exponential, SinghMaddala, DagumI>;

enum class ModelKind { kgen, weibull, exponential, singh_maddala, dagum };

/// CLI spelling: kgen, weibull, exponential, singh-maddala, dagum.
std::string_view model_name(ModelKind kind);
/// Throws std::invalid_argument for unknown names.
ModelKind parse_model_kind(std::string_view name);

ModelKind kind_of(const Distribution& dist);
std::size_t parameter_count(ModelKind kind);
std::vector<std::string> parameter_names(ModelKind kind);
std::vector<double> parameters(const Distribution& dist);
/// Builds a distribution from its natural parameters, in parameter_names order.
Distribution make_distribution(ModelKind kind, std::span<const double> params);

double pdf(const Distribution& dist, double x);
double log_pdf(const Distribution& dist, double x);
double cdf(const Distribution& dist, double x);
double ccdf(const Distribution& dist, double x);
double quantile(const Distribution& dist, double u);
double upper_quantile(const Distribution& dist, double v);
MomentRange moment_range(const Distribution& dist);

/// Inverse-transform draws; consumes one uniform per draw.
std::vector<double> sample(const Distribution& dist, std::size_t n, Rng& rng);

struct Evaluation {
  double pdf;
  double cdf;
  double ccdf;
  double quantile;
  double log_pdf;
};

/// Evaluates a baseline at income level x and probability u.
Evaluation dist_eval(const BaselineModel& model, double x, double u);

double kgen_pdf(double x, const KappaParams& p);
double kgen_cdf(double x, const KappaParams& p);
double kgen_ccdf(double x, const KappaParams& p);
double kgen_quantile(double u, const KappaParams& p);
double kgen_tail_exponent(const KappaParams& p);
/// n draws from stream 0 of `seed`.
std::vector<double> kgen_sample(std::size_t n, const KappaParams& p, std::uint64_t seed);

}  // namespace kgen
