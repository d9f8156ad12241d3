#ifndef CURVECOUNT_FIT_HPP
#define CURVECOUNT_FIT_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace curvecount {

/// Least-squares line through (log H, log count).
struct FitResult {
  double slope = 0;
  double intercept = 0;
  /// Root of the residual sum of squares.
  double residual = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> points;
  std::size_t zero_counts_excluded = 0;
};

/// Points with count 0 are dropped and tallied. Needs at least three distinct
/// H values among the rest, otherwise throws InsufficientPoints.
FitResult fit_exponent(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& points);

}  // namespace curvecount

#endif  // CURVECOUNT_FIT_HPP
