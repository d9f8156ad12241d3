#ifndef CURVECOUNT_EXPERIMENTS_HPP
#define CURVECOUNT_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "curvecount/fit.hpp"

namespace curvecount {

/// A verification campaign, read from JSON:
///
///   { "name": "...", "seed": 7, "modulus": [10007], "polynomials": ["X*Y - 1"],
///     "systems": ["X^2 + 1; X^2 + 3"], "H": [8, 16], "e": [], "N": [4, 8],
///     "nu": 1, "trials": 200, "budget": {"nodes": 1000000, "ms": 0},
///     "waivers": [] }
///
/// Optional extras: "u" (orbit start, default 1), "n_max" (F(X, Y^n) check,
/// default 4), "workers" (default 1), "output" (directory, default ".").
/// Systems separate maps with ';' or newlines.
struct Campaign {
  std::string name = "campaign";
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> moduli;
  std::vector<std::string> polynomials;
  std::vector<std::string> systems;
  std::vector<std::uint64_t> h;
  std::vector<std::uint64_t> e;
  std::vector<std::uint64_t> n;
  unsigned nu = 1;
  std::uint64_t trials = 0;
  std::uint64_t node_budget = 1000000;
  std::uint64_t time_budget_ms = 0;
  /// Any of "absolute_irreducibility", "fxyn", "same_degree".
  std::vector<std::string> waivers;
  std::uint64_t u = 1;
  unsigned n_max = 4;
  unsigned workers = 1;
  std::string output_dir = ".";

  bool waived(std::string_view hypothesis) const;
};

/// Throws InvalidArgument on malformed JSON, unknown keys, or non-positive budgets.
Campaign parse_campaign(std::string_view json_text);
/// Reads and parses a campaign file. Throws IoError.
Campaign load_campaign(const std::string& path);

inline constexpr const char* kCountingCsvHeader =
    "p,d,delta,H,e,trial_seed,count,bound_value,ratio,elapsed_ms,experiment,source,status";
inline constexpr const char* kDynamicsCsvHeader =
    "p,s,degrees,u,N,metric,value,exact,mode,seed,bound_value,ratio,comparable,source,status";

struct CampaignResult {
  std::string counting_csv;
  std::string dynamics_csv;
  std::string summary_json;
  std::uint64_t seed = 0;
  std::size_t counting_rows = 0;
  std::size_t dynamics_rows = 0;
  std::size_t error_rows = 0;
  /// Summary document as text.
  std::string summary;
};

/// Runs the grid. Hypothesis checks come first and are stamped into the
/// summary; rows are appended (and flushed) in cell order as cells finish.
/// The CURVECOUNT_SEED environment variable replaces the campaign seed.
/// Per-cell failures become rows with an "error:<code>" status.
CampaignResult run_campaign(const Campaign& c);

}  // namespace curvecount

#endif  // CURVECOUNT_EXPERIMENTS_HPP
