#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kgen {

/// Microdata values with nonnegative survey weights.
///
/// Weights act as frequency multipliers. Construction checks equal lengths,
/// finite values, nonnegative finite weights and a positive total weight; the
/// sign of the values is checked by the consumers that need it.
class WeightedSample {
 public:
  WeightedSample() = default;
  WeightedSample(std::vector<double> values, std::vector<double> weights);
  /// Unit weights.
  static WeightedSample unweighted(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double total_weight() const;
  /// Kish effective sample size (sum w)^2 / sum w^2.
  double effective_size() const;
  double weighted_mean() const;
  std::size_t distinct_count() const;

  /// Throws std::invalid_argument naming the first offending row (1-based)
  /// if any value is <= 0.
  void require_positive() const;

 private:
  std::vector<double> values_;
  std::vector<double> weights_;
};

/// Result of reading a `value[,weight]` CSV file.
struct CsvData {
  WeightedSample sample;
  /// File line number of each sample row.
  std::vector<std::size_t> lines;
  bool weights_from_file = false;
  std::string weight_column;
};

/// Raised for malformed input; `line` is the 1-based line number in the file
/// (the header is line 1), or 0 when the error is not tied to a line.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& message, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses UTF-8 CSV with a mandatory header containing `value`. The weight
/// column is `weight_column` when given (missing column is an error), else a
/// column named `weight` if present, else unit weights. '.' decimal separator,
/// no thousands separators, blank lines ignored.
CsvData read_csv(std::istream& in, const std::optional<std::string>& weight_column);
CsvData read_csv_file(const std::string& path, const std::optional<std::string>& weight_column);

}  // namespace kgen
