#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "curvecount/experiments.hpp"
#include "curvecount/fit.hpp"
#include "json.hpp"
#include "support.hpp"

namespace cc = curvecount;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("curvecount_unit_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("exponent fits") {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pts;
  for (std::uint64_t h : {4, 16, 64, 256, 1024}) pts.emplace_back(h, static_cast<std::uint64_t>(std::sqrt(h)));
  const auto f = cc::fit_exponent(pts);
  CHECK(f.slope == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(f.intercept == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(f.points.size() == 5);

  const auto flat = cc::fit_exponent({{2, 3}, {4, 3}, {8, 3}});
  CHECK(std::abs(flat.slope) < 1e-12);

  const auto zeros = cc::fit_exponent({{2, 0}, {4, 1}, {8, 2}, {16, 2}, {32, 0}});
  CHECK(zeros.zero_counts_excluded == 2);
  CHECK(zeros.points.size() == 3);
  CHECK_CODE(cc::fit_exponent({{2, 1}, {4, 0}, {8, 0}, {16, 5}}), InsufficientPoints);
  CHECK_CODE(cc::fit_exponent({{2, 1}, {2, 3}, {4, 1}}), InsufficientPoints);
}

TEST_CASE("fits recompute from their points") {
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> pts{{8, 1}, {16, 2}, {32, 2}, {64, 3}, {128, 5}};
  const auto f = cc::fit_exponent(pts);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [h, c] : pts) {
    const double x = std::log(static_cast<double>(h)), y = std::log(static_cast<double>(c));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  CHECK(std::abs(f.slope - slope) <= 1e-12 * std::abs(slope));
  CHECK(std::abs(f.intercept - intercept) <= 1e-12 * std::abs(intercept) + 1e-15);
  CHECK(f.residual > 0);
}

TEST_CASE("campaign parsing") {
  const auto c = cc::parse_campaign(R"({"name": "x", "seed": 5, "modulus": [13, 17], "polynomials": ["X*Y-1"],
                                        "H": [4], "trials": 3, "budget": {"nodes": 10, "ms": 20},
                                        "waivers": ["fxyn"]})");
  CHECK(c.name == "x");
  CHECK(c.seed == 5);
  CHECK(c.moduli == std::vector<std::uint64_t>{13, 17});
  CHECK(c.node_budget == 10);
  CHECK(c.time_budget_ms == 20);
  CHECK(c.waived("fxyn"));
  CHECK_FALSE(c.waived("same_degree"));
  CHECK_CODE(cc::parse_campaign(R"({"seed": 1, "colour": 3})"), InvalidArgument);
  CHECK_CODE(cc::parse_campaign("{not json"), InvalidArgument);
  CHECK_CODE(cc::parse_campaign(R"({"budget": {"nodes": 0}})"), InvalidArgument);
  CHECK_CODE(cc::parse_campaign(R"({"waivers": ["everything"]})"), InvalidArgument);
  CHECK_CODE(cc::load_campaign("/nonexistent/campaign.json"), IoError);
}

TEST_CASE("empty grid writes headers only") {
  const auto dir = scratch("empty");
  auto c = cc::parse_campaign(R"({"name": "empty", "seed": 1})");
  c.output_dir = dir.string();
  const auto res = cc::run_campaign(c);
  CHECK(res.counting_rows == 0);
  CHECK(res.dynamics_rows == 0);
  CHECK(slurp(res.counting_csv) == std::string(cc::kCountingCsvHeader) + "\n");
  CHECK(slurp(res.dynamics_csv) == std::string(cc::kDynamicsCsvHeader) + "\n");
  const auto summary = nlohmann::json::parse(slurp(res.summary_json));
  CHECK(summary.at("cells") == 0);
  fs::remove_all(dir);
}

TEST_CASE("campaign rows, hypothesis stamps, and errors") {
  const auto dir = scratch("grid");
  auto c = cc::parse_campaign(R"json({
    "name": "grid", "seed": 9, "modulus": [1009],
    "polynomials": ["X*Y - 1", "(X - Y)*(X + Y)"],
    "systems": ["X^2 + 1; X^2 + 3", "3*X^2"], "H": [8, 16, 32], "e": [4], "N": [3],
    "trials": 10, "budget": {"nodes": 100000}
  })json");
  c.output_dir = dir.string();
  const auto res = cc::run_campaign(c);
  const auto counting = slurp(res.counting_csv);
  const auto dynamics = slurp(res.dynamics_csv);
  CHECK(counting.rfind(cc::kCountingCsvHeader, 0) == 0);
  CHECK(dynamics.rfind(cc::kDynamicsCsvHeader, 0) == 0);
  CHECK(lines(counting) == res.counting_rows + 1);
  CHECK(lines(dynamics) == res.dynamics_rows + 1);
  CHECK(counting.find("hypothesis_failed") != std::string::npos);  // the reducible polynomial
  CHECK(dynamics.find("error:PowerFormExcluded") != std::string::npos);
  CHECK(res.error_rows > 0);
  const auto summary = nlohmann::json::parse(slurp(res.summary_json));
  CHECK(summary.contains("hypotheses"));
  CHECK(summary.contains("fits"));
  CHECK(summary.at("seed") == 9);
  fs::remove_all(dir);

  // Inputs are validated before any cell runs.
  auto bad = c;
  bad.polynomials.push_back("X*Y - ");
  CHECK_CODE(cc::run_campaign(bad), ParseError);
}

TEST_CASE("the seed environment variable overrides the campaign seed") {
  const auto dir = scratch("env");
  auto c = cc::parse_campaign(R"({"name": "env", "seed": 1, "modulus": [101], "polynomials": ["X*Y - 1"],
                                  "H": [4, 8, 16], "trials": 5})");
  c.output_dir = dir.string();
  setenv("CURVECOUNT_SEED", "777", 1);
  const auto res = cc::run_campaign(c);
  unsetenv("CURVECOUNT_SEED");
  CHECK(res.seed == 777);
  fs::remove_all(dir);
}
