#pragma once

// Test-only reference computations, deliberately independent of the library's
// closed forms and quadrature.

#include <cmath>
#include <functional>

namespace oracle {

/// int_0^inf f(x) dx via the trapezoid rule in y = log(x / scale), which turns
/// exponential and power-law tails alike into exponential decay in y.
inline double log_trapezoid_mass(const std::function<double(double)>& f, double scale,
                                 double y_lo = -60.0, double y_hi = 60.0, double h = 0.004) {
  double s = 0.0;
  const long n = std::lround((y_hi - y_lo) / h);
  for (long i = 0; i <= n; ++i) {
    const double y = y_lo + h * static_cast<double>(i);
    const double x = scale * std::exp(y);
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    s += w * f(x) * x;
  }
  return s * h;
}

/// Root of a nondecreasing g on [lo, hi] by bisection.
inline double bisect(const std::function<double(double)>& g, double target, double lo, double hi,
                     int iterations = 300) {
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Centered finite difference.
inline double derivative(const std::function<double(double)>& g, double x, double rel_step = 1e-5) {
  const double h = rel_step * x;
  return (g(x + h) - g(x - h)) / (2.0 * h);
}

}  // namespace oracle
