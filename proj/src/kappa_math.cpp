#include "kgen/kappa_math.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kgen {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// Above this, asinh(z) = ln(2z) + 1/(4z^2) - ... is exact to double precision
// after the first term, and z*z would lose range.
constexpr double kLargeLog = 300.0;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::domain_error(std::string(what) + ": argument must be finite");
  }
}

}  // namespace

Kappa::Kappa(double value) : value_(value) {
  if (!(value >= 0.0 && value < 1.0)) {
    throw std::domain_error("kappa must lie in [0, 1), got " + std::to_string(value));
  }
}

double log_kappa_exp(double x, Kappa kappa) {
  require_finite(x, "kappa_exp");
  if (kappa.is_ordinary()) return x;
  const double k = kappa.value();
  return std::asinh(k * x) / k;
}

double kappa_exp(double x, Kappa kappa) { return std::exp(log_kappa_exp(x, kappa)); }

double kappa_log(double y, Kappa kappa) {
  if (!(y > 0.0) || std::isnan(y)) {
    throw std::domain_error("kappa_log: argument must be positive");
  }
  if (kappa.is_ordinary()) return std::log(y);
  const double k = kappa.value();
  return std::sinh(k * std::log(y)) / k;
}

double log_kappa_exp_neg_from_log(double log_t, Kappa kappa) {
  if (std::isnan(log_t)) throw std::domain_error("log_kappa_exp_neg_from_log: NaN");
  if (log_t == -INFINITY) return 0.0;
  if (kappa.is_ordinary()) return -std::exp(log_t);
  const double k = kappa.value();
  const double log_kt = std::log(k) + log_t;
  if (log_kt > kLargeLog) return -(kLn2 + log_kt) / k;
  return -std::asinh(std::exp(log_kt)) / k;
}

double log_kappa_hypot_from_log(double log_t, Kappa kappa) {
  if (log_t == -INFINITY || kappa.value() == 0.0) return 0.0;
  const double log_kt = std::log(kappa.value()) + log_t;
  if (log_kt > kLargeLog) return log_kt;
  if (log_kt > 0.0) {
    // sqrt(1 + z^2) = z sqrt(1 + z^-2)
    return log_kt + 0.5 * std::log1p(std::exp(-2.0 * log_kt));
  }
  return 0.5 * std::log1p(std::exp(2.0 * log_kt));
}

}  // namespace kgen
