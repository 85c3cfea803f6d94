#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "kgen/data.hpp"

using namespace kgen;

namespace {

CsvData parse(const std::string& text, std::optional<std::string> weight = std::nullopt) {
  std::istringstream in(text);
  return read_csv(in, weight);
}

std::size_t error_line(const std::string& text, std::optional<std::string> weight = std::nullopt) {
  try {
    parse(text, weight);
  } catch (const InputError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

TEST_CASE("weighted sample basics") {
  const WeightedSample s({1.0, 2.0, 4.0}, {1.0, 1.0, 2.0});
  CHECK(s.total_weight() == 4.0);
  CHECK(s.weighted_mean() == 2.75);
  CHECK(s.effective_size() == doctest::Approx(16.0 / 6.0));
  CHECK(s.distinct_count() == 3);
  CHECK(WeightedSample::unweighted({2.0, 2.0, 3.0}).distinct_count() == 2);
  CHECK_THROWS_AS(WeightedSample({1.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedSample({1.0}, {-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedSample({1.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedSample::unweighted(std::vector<double>{std::nan("")}), std::invalid_argument);
  CHECK_THROWS_WITH_AS(WeightedSample::unweighted({1.0, 0.0}).require_positive(),
                       doctest::Contains("row 2"), std::invalid_argument);
}

TEST_CASE("csv with and without weights") {
  const auto plain = parse("value\n1.5\n2\n\n3e2\n");
  CHECK(plain.sample.values() == std::vector<double>{1.5, 2.0, 300.0});
  CHECK(plain.sample.weights() == std::vector<double>{1.0, 1.0, 1.0});
  CHECK_FALSE(plain.weights_from_file);
  CHECK(plain.lines == std::vector<std::size_t>{2, 3, 5});

  const auto auto_w = parse("id,value,weight\na,1,2\nb,3,0.5\n");
  CHECK(auto_w.weights_from_file);
  CHECK(auto_w.weight_column == "weight");
  CHECK(auto_w.sample.weights() == std::vector<double>{2.0, 0.5});

  const auto named = parse("value,w,weight\n1,4,9\n", std::string("w"));
  CHECK(named.sample.weights() == std::vector<double>{4.0});

  const auto crlf = parse("\xEF\xBB\xBFvalue,weight\r\n-1.25,1\r\n");
  CHECK(crlf.sample.values() == std::vector<double>{-1.25});
}

TEST_CASE("malformed csv names the line") {
  CHECK(error_line("value\n1\nabc\n") == 3);
  CHECK(error_line("value\n1\n1,000\n") == 3);
  CHECK(error_line("value,weight\n1,1\n2\n") == 3);
  CHECK(error_line("value,weight\n1,1\n2,-1\n") == 3);
  CHECK(error_line("value\n1,5\n") == 2);
  CHECK(error_line("income\n1\n") == 1);
  CHECK(error_line("value\n1\n", std::string("pw")) == 1);
  CHECK_THROWS_AS(parse(""), InputError);
  CHECK_THROWS_AS(parse("value\n"), InputError);
  CHECK_THROWS_WITH(parse("value\n1\nx\n"), doctest::Contains("line 3"));
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(read_csv_file("/nonexistent/kgen.csv", std::nullopt), InputError);
}
