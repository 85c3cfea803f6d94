#include "kgen/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace kgen {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.69314718055994530942;

void require_positive_param(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::domain_error(std::string(name) + " must be a positive finite number, got " +
                            std::to_string(v));
  }
}

void require_density_support(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("density evaluated outside support (0, inf): x = " + std::to_string(x));
  }
}

void require_cdf_support(double x) {
  if (!(x >= 0.0)) {
    throw std::domain_error("distribution function evaluated at negative x = " + std::to_string(x));
  }
}

void require_probability(double u) {
  if (!(u >= 0.0 && u < 1.0)) {
    throw std::domain_error("quantile requires u in [0, 1), got " + std::to_string(u));
  }
}

void require_upper_probability(double v) {
  if (!(v > 0.0 && v <= 1.0)) {
    throw std::domain_error("upper quantile requires v in (0, 1], got " + std::to_string(v));
  }
}

// log(1 + e^y) without overflow.
double softplus(double y) { return y > 0.0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y)); }

// log(sinh(k L) / k) for k L >= 0, or log(L) for the ordinary branch.
double log_kappa_log_of_exp(double big_l, Kappa kappa) {
  if (kappa.is_ordinary()) return std::log(big_l);
  const double k = kappa.value();
  const double kl = k * big_l;
  if (kl > 20.0) return kl - kLn2 - std::log(k) + std::log1p(-std::exp(-2.0 * kl));
  return std::log(std::sinh(kl) / k);
}

}  // namespace

KappaParams::KappaParams(double alpha, double beta, double kappa)
    : KappaParams(alpha, beta, Kappa(kappa)) {}

KappaParams::KappaParams(double alpha, double beta, Kappa kappa)
    : alpha_(alpha), beta_(beta), kappa_(kappa) {
  require_positive_param(alpha, "alpha");
  require_positive_param(beta, "beta");
}

// ---------------------------------------------------------------------------
// kappa-generalized

KappaGeneralized::KappaGeneralized(KappaParams params)
    : params_(params),
      log_alpha_(std::log(params.alpha())),
      log_beta_(std::log(params.beta())),
      log_kappa_(params.kappa().value() > 0.0 ? std::log(params.kappa().value()) : -kInf) {}

double KappaGeneralized::log_pdf_at_log(double log_x) const {
  const double a = params_.alpha();
  const double ly = log_x - log_beta_;
  const double log_t = a * ly;
  double log_survival = 0.0;
  double log_hypot = 0.0;
  if (params_.kappa().is_ordinary()) {
    log_survival = -std::exp(log_t);
  } else {
    // Same branches as log_kappa_exp_neg_from_log / log_kappa_hypot_from_log.
    const double k = params_.kappa().value();
    const double log_kt = log_kappa_ + log_t;
    if (log_kt > 300.0) {
      log_survival = -(kLn2 + log_kt) / k;
      log_hypot = log_kt;
    } else {
      const double z = std::exp(log_kt);
      log_survival = -std::asinh(z) / k;
      log_hypot = 0.5 * std::log1p(z * z);
    }
  }
  return log_alpha_ - log_beta_ + (a - 1.0) * ly + log_survival - log_hypot;
}

double KappaGeneralized::log_pdf(double x) const {
  require_density_support(x);
  return log_pdf_at_log(std::log(x));
}

double KappaGeneralized::pdf(double x) const { return std::exp(log_pdf(x)); }

double KappaGeneralized::log_ccdf(double x) const {
  require_cdf_support(x);
  if (x == 0.0) return 0.0;
  if (x == kInf) return -kInf;
  return log_kappa_exp_neg_from_log(params_.alpha() * (std::log(x) - log_beta_), params_.kappa());
}

double KappaGeneralized::ccdf(double x) const { return std::exp(log_ccdf(x)); }

double KappaGeneralized::cdf(double x) const { return -std::expm1(log_ccdf(x)); }

double KappaGeneralized::quantile(double u) const {
  require_probability(u);
  if (u == 0.0) return 0.0;
  const double big_l = -std::log1p(-u);
  return params_.beta() * std::exp(log_kappa_log_of_exp(big_l, params_.kappa()) / params_.alpha());
}

double KappaGeneralized::upper_quantile(double v) const {
  require_upper_probability(v);
  if (v == 1.0) return 0.0;
  const double big_l = -std::log(v);
  return params_.beta() * std::exp(log_kappa_log_of_exp(big_l, params_.kappa()) / params_.alpha());
}

MomentRange KappaGeneralized::moment_range() const {
  const double k = params_.kappa().value();
  const double upper = params_.kappa().is_ordinary() ? kInf : params_.alpha() / k;
  return {-params_.alpha(), upper};
}

double KappaGeneralized::tail_exponent() const {
  if (params_.kappa().is_ordinary()) {
    throw std::domain_error(
        "kappa = 0: the tail is stretched-exponential, no Pareto exponent");
  }
  return params_.alpha() / params_.kappa().value();
}

// ---------------------------------------------------------------------------
// Weibull

Weibull::Weibull(double shape, double scale) : shape_(shape), scale_(scale) {
  require_positive_param(shape, "Weibull shape");
  require_positive_param(scale, "Weibull scale");
  log_shape_ = std::log(shape);
  log_scale_ = std::log(scale);
}

double Weibull::log_pdf_at_log(double log_x) const {
  const double ly = log_x - log_scale_;
  return log_shape_ - log_scale_ + (shape_ - 1.0) * ly - std::exp(shape_ * ly);
}

double Weibull::log_pdf(double x) const {
  require_density_support(x);
  return log_pdf_at_log(std::log(x));
}

double Weibull::pdf(double x) const { return std::exp(log_pdf(x)); }

double Weibull::ccdf(double x) const {
  require_cdf_support(x);
  return std::exp(-std::pow(x / scale_, shape_));
}

double Weibull::cdf(double x) const {
  require_cdf_support(x);
  return -std::expm1(-std::pow(x / scale_, shape_));
}

double Weibull::quantile(double u) const {
  require_probability(u);
  return scale_ * std::pow(-std::log1p(-u), 1.0 / shape_);
}

double Weibull::upper_quantile(double v) const {
  require_upper_probability(v);
  return scale_ * std::pow(-std::log(v), 1.0 / shape_);
}

MomentRange Weibull::moment_range() const { return {-shape_, kInf}; }

// ---------------------------------------------------------------------------
// Exponential

Exponential::Exponential(double scale) : scale_(scale) {
  require_positive_param(scale, "exponential scale");
  log_scale_ = std::log(scale);
}

double Exponential::log_pdf_at_log(double log_x) const {
  return -log_scale_ - std::exp(log_x - log_scale_);
}

double Exponential::log_pdf(double x) const {
  require_density_support(x);
  return -log_scale_ - x / scale_;
}

double Exponential::pdf(double x) const { return std::exp(log_pdf(x)); }

double Exponential::ccdf(double x) const {
  require_cdf_support(x);
  return std::exp(-x / scale_);
}

double Exponential::cdf(double x) const {
  require_cdf_support(x);
  return -std::expm1(-x / scale_);
}

double Exponential::quantile(double u) const {
  require_probability(u);
  return -scale_ * std::log1p(-u);
}

double Exponential::upper_quantile(double v) const {
  require_upper_probability(v);
  return -scale_ * std::log(v);
}

MomentRange Exponential::moment_range() const { return {-1.0, kInf}; }

// ---------------------------------------------------------------------------
// Singh-Maddala

SinghMaddala::SinghMaddala(double a, double b, double q) : a_(a), b_(b), q_(q) {
  require_positive_param(a, "Singh-Maddala a");
  require_positive_param(b, "Singh-Maddala b");
  require_positive_param(q, "Singh-Maddala q");
  log_aq_ = std::log(a * q);
  log_b_ = std::log(b);
}

double SinghMaddala::log_pdf_at_log(double log_x) const {
  const double ly = log_x - log_b_;
  return log_aq_ - log_b_ + (a_ - 1.0) * ly - (1.0 + q_) * softplus(a_ * ly);
}

double SinghMaddala::log_pdf(double x) const {
  require_density_support(x);
  return log_pdf_at_log(std::log(x));
}

double SinghMaddala::pdf(double x) const { return std::exp(log_pdf(x)); }

double SinghMaddala::ccdf(double x) const {
  require_cdf_support(x);
  if (x == 0.0) return 1.0;
  return std::exp(-q_ * softplus(a_ * std::log(x / b_)));
}

double SinghMaddala::cdf(double x) const {
  require_cdf_support(x);
  if (x == 0.0) return 0.0;
  return -std::expm1(-q_ * softplus(a_ * std::log(x / b_)));
}

double SinghMaddala::quantile(double u) const {
  require_probability(u);
  if (u == 0.0) return 0.0;
  return b_ * std::pow(std::expm1(-std::log1p(-u) / q_), 1.0 / a_);
}

double SinghMaddala::upper_quantile(double v) const {
  require_upper_probability(v);
  if (v == 1.0) return 0.0;
  return b_ * std::pow(std::expm1(-std::log(v) / q_), 1.0 / a_);
}

MomentRange SinghMaddala::moment_range() const { return {-a_, a_ * q_}; }

// ---------------------------------------------------------------------------
// Dagum type I

DagumI::DagumI(double a, double b, double p) : a_(a), b_(b), p_(p) {
  require_positive_param(a, "Dagum a");
  require_positive_param(b, "Dagum b");
  require_positive_param(p, "Dagum p");
  log_ap_ = std::log(a * p);
  log_b_ = std::log(b);
}

double DagumI::log_pdf_at_log(double log_x) const {
  const double ly = log_x - log_b_;
  return log_ap_ - log_b_ + (a_ * p_ - 1.0) * ly - (p_ + 1.0) * softplus(a_ * ly);
}

double DagumI::log_pdf(double x) const {
  require_density_support(x);
  return log_pdf_at_log(std::log(x));
}

double DagumI::pdf(double x) const { return std::exp(log_pdf(x)); }

double DagumI::cdf(double x) const {
  require_cdf_support(x);
  if (x == 0.0) return 0.0;
  return std::exp(-p_ * softplus(-a_ * std::log(x / b_)));
}

double DagumI::ccdf(double x) const {
  require_cdf_support(x);
  if (x == 0.0) return 1.0;
  return -std::expm1(-p_ * softplus(-a_ * std::log(x / b_)));
}

double DagumI::quantile(double u) const {
  require_probability(u);
  if (u == 0.0) return 0.0;
  return b_ * std::pow(std::expm1(-std::log(u) / p_), -1.0 / a_);
}

double DagumI::upper_quantile(double v) const {
  require_upper_probability(v);
  if (v == 1.0) return 0.0;
  return b_ * std::pow(std::expm1(-std::log1p(-v) / p_), -1.0 / a_);
}

MomentRange DagumI::moment_range() const { return {-a_ * p_, a_}; }

// ---------------------------------------------------------------------------
// Variant dispatch

std::string_view model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kgen: return "kgen";
    case ModelKind::weibull: return "weibull";
    case ModelKind::exponential: return "exponential";
    case ModelKind::singh_maddala: return "singh-maddala";
    case ModelKind::dagum: return "dagum";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  for (ModelKind k : {ModelKind::kgen, ModelKind::weibull, ModelKind::exponential,
                      ModelKind::singh_maddala, ModelKind::dagum}) {
    if (model_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown model '" + std::string(name) +
                              "' (expected kgen, weibull, exponential, singh-maddala, dagum)");
}

ModelKind kind_of(const Distribution& dist) {
  return static_cast<ModelKind>(dist.index());
}

std::size_t parameter_count(ModelKind kind) { return parameter_names(kind).size(); }

std::vector<std::string> parameter_names(ModelKind kind) {
  switch (kind) {
    case ModelKind::kgen: return {"alpha", "beta", "kappa"};
    case ModelKind::weibull: return {"shape", "scale"};
    case ModelKind::exponential: return {"scale"};
    case ModelKind::singh_maddala: return {"a", "b", "q"};
    case ModelKind::dagum: return {"a", "b", "p"};
  }
  return {};
}

std::vector<double> parameters(const Distribution& dist) {
  struct Visitor {
    std::vector<double> operator()(const KappaGeneralized& d) const {
      return {d.params().alpha(), d.params().beta(), d.params().kappa().value()};
    }
    std::vector<double> operator()(const Weibull& d) const { return {d.shape(), d.scale()}; }
    std::vector<double> operator()(const Exponential& d) const { return {d.scale()}; }
    std::vector<double> operator()(const SinghMaddala& d) const { return {d.a(), d.b(), d.q()}; }
    std::vector<double> operator()(const DagumI& d) const { return {d.a(), d.b(), d.p()}; }
  };
  return std::visit(Visitor{}, dist);
}

Distribution make_distribution(ModelKind kind, std::span<const double> p) {
  if (p.size() != parameter_count(kind)) {
    throw std::invalid_argument("wrong parameter count for model " + std::string(model_name(kind)));
  }
  switch (kind) {
    case ModelKind::kgen: return KappaGeneralized(KappaParams(p[0], p[1], p[2]));
    case ModelKind::weibull: return Weibull(p[0], p[1]);
    case ModelKind::exponential: return Exponential(p[0]);
    case ModelKind::singh_maddala: return SinghMaddala(p[0], p[1], p[2]);
    case ModelKind::dagum: return DagumI(p[0], p[1], p[2]);
  }
  throw std::invalid_argument("unknown model kind");
}

double pdf(const Distribution& dist, double x) {
  return std::visit([x](const auto& d) { return d.pdf(x); }, dist);
}
double log_pdf(const Distribution& dist, double x) {
  return std::visit([x](const auto& d) { return d.log_pdf(x); }, dist);
}
double cdf(const Distribution& dist, double x) {
  return std::visit([x](const auto& d) { return d.cdf(x); }, dist);
}
double ccdf(const Distribution& dist, double x) {
  return std::visit([x](const auto& d) { return d.ccdf(x); }, dist);
}
double quantile(const Distribution& dist, double u) {
  return std::visit([u](const auto& d) { return d.quantile(u); }, dist);
}
double upper_quantile(const Distribution& dist, double v) {
  return std::visit([v](const auto& d) { return d.upper_quantile(v); }, dist);
}
MomentRange moment_range(const Distribution& dist) {
  return std::visit([](const auto& d) { return d.moment_range(); }, dist);
}

std::vector<double> sample(const Distribution& dist, std::size_t n, Rng& rng) {
  std::vector<double> out;
  out.reserve(n);
  std::visit(
      [&](const auto& d) {
        for (std::size_t i = 0; i < n; ++i) out.push_back(d.quantile(rng.uniform()));
      },
      dist);
  return out;
}

Evaluation dist_eval(const BaselineModel& model, double x, double u) {
  return std::visit(
      [x, u](const auto& d) {
        return Evaluation{d.pdf(x), d.cdf(x), d.ccdf(x), d.quantile(u), d.log_pdf(x)};
      },
      model);
}

double kgen_pdf(double x, const KappaParams& p) { return KappaGeneralized(p).pdf(x); }
double kgen_cdf(double x, const KappaParams& p) { return KappaGeneralized(p).cdf(x); }
double kgen_ccdf(double x, const KappaParams& p) { return KappaGeneralized(p).ccdf(x); }
double kgen_quantile(double u, const KappaParams& p) { return KappaGeneralized(p).quantile(u); }
double kgen_tail_exponent(const KappaParams& p) { return KappaGeneralized(p).tail_exponent(); }

std::vector<double> kgen_sample(std::size_t n, const KappaParams& p, std::uint64_t seed) {
  Rng rng(seed, streams::kPrimary);
  return sample(KappaGeneralized(p), n, rng);
}

}  // namespace kgen
