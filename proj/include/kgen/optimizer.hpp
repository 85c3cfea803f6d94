#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace kgen {

struct SimplexOptions {
  std::size_t max_iterations = 5000;
  /// Vertex spread, relative to 1 + |best coordinate|.
  double x_tolerance = 1e-8;
  /// Spread of objective values across the simplex.
  double f_tolerance = 1e-9;
  double initial_step = 0.1;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  /// Best objective value after each iteration; nonincreasing.
  std::vector<double> trace;
};

/// Nelder-Mead minimization with the standard reflection/expansion/
/// contraction/shrink coefficients (1, 2, 1/2, 1/2). Non-finite objective
/// values are treated as +inf, so infeasible points are never accepted.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                          std::vector<double> start, const SimplexOptions& options);

}  // namespace kgen
