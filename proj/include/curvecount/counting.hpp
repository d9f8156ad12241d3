#ifndef CURVECOUNT_COUNTING_HPP
#define CURVECOUNT_COUNTING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvecount/dynamics.hpp"
#include "curvecount/fit.hpp"
#include "curvecount/lift.hpp"
#include "curvecount/poly.hpp"

namespace curvecount {

/// An evaluation domain in F_p: a residue interval, a multiplicative subgroup,
/// or an explicit set.
class PointSet {
 public:
  enum class Kind { Interval, Subgroup, Explicit };

  /// Residues of K, K+1, ..., K+H (wrapping mod p). Requires H < p.
  static PointSet interval(const FieldContext& ctx, std::uint64_t start, std::uint64_t length);
  /// The subgroup of F_p^* of the given order. Throws NotADivisor.
  static PointSet subgroup(const FieldContext& ctx, std::uint64_t order);
  /// Elements are reduced mod p and deduplicated; order is ascending.
  static PointSet explicit_list(const FieldContext& ctx, std::vector<std::uint64_t> elems);

  Kind kind() const noexcept { return kind_; }
  const FieldContext& context() const noexcept { return ctx_; }
  std::uint64_t start() const noexcept { return start_; }
  std::uint64_t length() const noexcept { return length_; }
  std::uint64_t subgroup_order() const noexcept { return length_; }

  std::uint64_t size() const noexcept;
  bool contains(std::uint64_t x) const;
  /// Members in a fixed order: interval order, ascending otherwise.
  std::vector<std::uint64_t> elements() const;
  std::string describe() const;

 private:
  PointSet(const FieldContext& ctx, Kind kind) : ctx_(ctx), kind_(kind) {}

  FieldContext ctx_;
  Kind kind_;
  std::uint64_t start_ = 0;
  std::uint64_t length_ = 0;  // H for intervals, e for subgroups
  std::optional<Subgroup> subgroup_;
  std::vector<std::uint64_t> list_;
};

enum class CountMethod { RowSolve, DoubleLoop };
std::string_view to_string(CountMethod m);

inline constexpr std::size_t kMaxWitnesses = 10;
inline constexpr std::uint64_t kRowScanModulus = 512;

struct CountOptions {
  CountMethod method = CountMethod::RowSolve;
  unsigned workers = 1;
  /// Wall-clock budget in milliseconds; 0 disables it.
  std::uint64_t budget_ms = 0;
  /// Rows are scanned over all of F_p when p <= scan_modulus; otherwise roots
  /// come from gcd(row, Y^p - Y) and equal-degree splitting.
  std::uint64_t scan_modulus = kRowScanModulus;
};

struct CountResult {
  std::uint64_t count = 0;
  CountMethod method = CountMethod::RowSolve;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> witnesses;
  double elapsed_ms = 0;
};

/// N_F(A, B) = #{(a, b) in A x B : F(a, b) = 0}. Throws ZeroPolynomial,
/// DomainMismatch, and BudgetExceeded carrying the partial count.
CountResult count_solutions(const BivariatePoly& f, const PointSet& a, const PointSet& b,
                            const CountOptions& opts = {});

/// #(psi(I) ∩ J) with set semantics: distinct values psi(x), x in I, g(x) != 0.
CountResult count_rational_image(const RationalMap& psi, const PointSet& i, const PointSet& j);

struct BoxCount {
  std::uint64_t count = 0;
  std::vector<IntPoint> points;
  /// x values whose specialization vanishes identically (each adds H+1 points).
  std::vector<std::int64_t> degenerate_rows;
};

/// Small boxes are scanned directly; larger ones find integer roots per row.
inline constexpr std::uint64_t kBoxScanLimit = 64;
inline constexpr std::uint64_t kMaxBoxSide = 1000000;

/// Integer points of Fz = 0 in [K, K+H] x [L, L+H]. Throws ZeroPolynomial,
/// DomainMismatch (modular input), InvalidArgument (H too large).
BoxCount count_integer_box(const BivariatePoly& fz, std::int64_t k, std::int64_t l, std::uint64_t h,
                           bool collect_points = false);

// ---------------------------------------------------------------------------
// Interval experiments

/// p^(1 / ((d - 1/2) delta + 1/2)), the largest H for the interval bound.
double admissible_interval_length(std::uint64_t p, unsigned d, std::size_t delta);

struct IntervalRow {
  std::uint64_t h = 0;
  std::uint64_t trials = 0;
  std::uint64_t max_count = 0;
  double mean_count = 0;
  bool admissible = true;
  /// H^(1/d) and max_count / H^(1/d).
  double bound_value = 0;
  double ratio = 0;
  std::uint64_t trial_seed = 0;
  double elapsed_ms = 0;
  std::vector<std::uint64_t> counts;
};

struct IntervalReport {
  std::uint64_t p = 0;
  unsigned d = 0;
  std::size_t delta = 0;
  double admissible_h = 0;
  std::uint64_t seed = 0;
  std::vector<IntervalRow> rows;
  std::optional<FitResult> fit;
  std::string fit_error;
};

/// For each H draws `trials` uniform pairs of intervals of length H, counts
/// solutions, and fits log(max count) against log H.
IntervalReport theorem_II_experiment(const BivariatePoly& f, std::uint64_t trials,
                                     const std::vector<std::uint64_t>& h_schedule, std::uint64_t seed,
                                     unsigned workers = 1);

struct BombieriCheck {
  std::uint64_t count = 0;
  double main_term = 0;  // H^2 / p
  double ratio = 0;
  std::uint64_t k = 0, l = 0;
};

/// One random pair of intervals of length H compared with H^2 / p.
BombieriCheck bombieri_sanity(const BivariatePoly& f, std::uint64_t h, std::uint64_t seed);

struct SubgroupRow {
  std::uint64_t h = 0;
  std::uint64_t e = 0;
  std::uint64_t count = 0;
  double bound_value = 0;
  double ratio = 0;
  double elapsed_ms = 0;
};

struct SubgroupReport {
  std::uint64_t p = 0;
  unsigned d = 0;
  int d_x = 0, d_y = 0;
  unsigned n_max = 0;
  bool hypothesis_holds = false;
  std::optional<unsigned> hypothesis_failure;
  std::vector<SubgroupRow> rows;
};

/// d_X^(1/2) H^(1/2) max(d e p^(-1/2), d^(2/3) e^(1/3), d_X^(1/2) d_Y^2).
double subgroup_bound(std::uint64_t p, unsigned d, int d_x, int d_y, std::uint64_t h, std::uint64_t e);

/// N_F([1, H], G_e) for each (H, e) in the grid, with the F(X, Y^n) check for
/// n <= n_max stamped into the report.
SubgroupReport theorem_IG_experiment(const BivariatePoly& f, const std::vector<std::uint64_t>& h_schedule,
                                     const std::vector<std::uint64_t>& e_schedule, unsigned n_max = 4,
                                     unsigned workers = 1);

// ---------------------------------------------------------------------------
// Lift chain

struct LiftChainReport {
  std::uint64_t h = 0;      // solutions are taken with |x|, |y| <= h
  std::uint64_t n = 0;      // number of such solutions
  std::uint64_t side = 0;   // floor(2 d h / sqrt(n))
  std::int64_t x0 = 0, y0 = 0;  // shift placing the chosen points in (0, side]^2
  std::size_t delta = 0;
  unsigned d = 0;
  LiftedPoly lift;
  BivariatePoly shifted;
  bool congruences = false;
  bool height_bound = false;
  /// Every solution maps to a multiple p t of the lift with |t| within bound.
  bool quotients = false;
  unsigned resamples = 0;
};

/// Runs the full construction on F: all solutions with symmetric
/// representatives, a sub-square of side 2 d H / sqrt(N) holding delta - 1 of
/// them, the shift, the determinants, and the checks. Throws
/// InsufficientPoints when no sub-square holds enough solutions and
/// SingularSystem when every resample is singular.
LiftChainReport lift_chain(const BivariatePoly& f, std::uint64_t seed, unsigned max_resamples = 64);

}  // namespace curvecount

#endif  // CURVECOUNT_COUNTING_HPP
