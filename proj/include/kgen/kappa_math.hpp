#pragma once

// Kaniadakis kappa-deformed exponential and logarithm.
//
// exp_k(x) = (sqrt(1 + k^2 x^2) + k x)^(1/k) is evaluated as exp(asinh(k x) / k),
// which is the same function written without the cancellation in the base for
// negative x. ln_k(y) = (y^k - y^-k) / (2k) is evaluated as sinh(k ln y) / k.

namespace kgen {

/// Deformation parameter, restricted to [0, 1).
class Kappa {
 public:
  /// Below this value the kernels fall back to the ordinary exp/log.
  static constexpr double kSwitchThreshold = 1e-6;

  constexpr Kappa() = default;
  /// Throws std::domain_error unless 0 <= value < 1.
  explicit Kappa(double value);

  constexpr double value() const { return value_; }
  constexpr bool is_ordinary() const { return value_ < kSwitchThreshold; }

  friend constexpr bool operator==(Kappa, Kappa) = default;

 private:
  double value_ = 0.0;
};

double kappa_exp(double x, Kappa kappa);
double kappa_log(double y, Kappa kappa);

/// log(exp_k(x)); finite for every finite x.
double log_kappa_exp(double x, Kappa kappa);

/// log(exp_k(-t)) with t = exp(log_t) >= 0, without forming t when it would
/// overflow. This is the log-survival function of the kappa-generalized law in
/// terms of log((x/beta)^alpha).
double log_kappa_exp_neg_from_log(double log_t, Kappa kappa);

/// log(sqrt(1 + (k t)^2)) with t = exp(log_t), overflow safe.
double log_kappa_hypot_from_log(double log_t, Kappa kappa);

}  // namespace kgen
