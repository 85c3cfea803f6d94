#include "kgen/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kgen {

WeightedSample::WeightedSample(std::vector<double> values, std::vector<double> weights)
    : values_(std::move(values)), weights_(std::move(weights)) {
  if (values_.size() != weights_.size()) {
    throw std::invalid_argument("values and weights differ in length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("non-finite value at row " + std::to_string(i + 1));
    }
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i])) {
      throw std::invalid_argument("invalid weight at row " + std::to_string(i + 1));
    }
    total += weights_[i];
  }
  if (!values_.empty() && !(total > 0.0)) {
    throw std::invalid_argument("total weight must be positive");
  }
}

WeightedSample WeightedSample::unweighted(std::vector<double> values) {
  std::vector<double> w(values.size(), 1.0);
  return WeightedSample(std::move(values), std::move(w));
}

double WeightedSample::total_weight() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

double WeightedSample::effective_size() const {
  double s = 0.0, s2 = 0.0;
  for (double w : weights_) {
    s += w;
    s2 += w * w;
  }
  return s2 > 0.0 ? s * s / s2 : 0.0;
}

double WeightedSample::weighted_mean() const {
  double sw = 0.0, swx = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    sw += weights_[i];
    swx += weights_[i] * values_[i];
  }
  return swx / sw;
}

std::size_t WeightedSample::distinct_count() const {
  std::vector<double> v = values_;
  std::sort(v.begin(), v.end());
  return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

void WeightedSample::require_positive() const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0)) {
      throw std::invalid_argument("non-positive value " + std::to_string(values_[i]) +
                                  " at row " + std::to_string(i + 1));
    }
  }
}

InputError::InputError(const std::string& message, std::size_t line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  for (auto& f : out) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return out;
}

double parse_number(const std::string& field, std::size_t line, const char* column) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (field.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw InputError(std::string("cannot parse ") + column + " '" + field + "'", line);
  }
  return v;
}

}  // namespace

CsvData read_csv(std::istream& in, const std::optional<std::string>& weight_column) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    header = split_fields(line);
    break;
  }
  if (header.empty()) throw InputError("missing header row", 0);

  const auto column_index = [&](const std::string& name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };

  const auto value_idx = column_index("value");
  if (!value_idx) throw InputError("header has no 'value' column", lineno);

  CsvData out;
  std::optional<std::size_t> weight_idx;
  if (weight_column) {
    weight_idx = column_index(*weight_column);
    if (!weight_idx) throw InputError("weight column '" + *weight_column + "' not found", lineno);
    out.weight_column = *weight_column;
  } else if ((weight_idx = column_index("weight"))) {
    out.weight_column = "weight";
  }
  out.weights_from_file = weight_idx.has_value();

  std::vector<double> values, weights;
  std::vector<std::size_t> lines;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw InputError("expected " + std::to_string(header.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       lineno);
    }
    values.push_back(parse_number(fields[*value_idx], lineno, "value"));
    lines.push_back(lineno);
    if (weight_idx) {
      const double w = parse_number(fields[*weight_idx], lineno, "weight");
      if (w < 0.0) throw InputError("negative weight", lineno);
      weights.push_back(w);
    } else {
      weights.push_back(1.0);
    }
  }
  if (values.empty()) throw InputError("no data rows", lineno);
  try {
    out.sample = WeightedSample(std::move(values), std::move(weights));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what(), 0);
  }
  out.lines = std::move(lines);
  return out;
}

CsvData read_csv_file(const std::string& path, const std::optional<std::string>& weight_column) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'", 0);
  return read_csv(in, weight_column);
}

}  // namespace kgen
