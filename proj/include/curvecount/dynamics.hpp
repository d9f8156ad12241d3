#ifndef CURVECOUNT_DYNAMICS_HPP
#define CURVECOUNT_DYNAMICS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvecount/ff.hpp"
#include "curvecount/upoly.hpp"

namespace curvecount {

/// Value returned by a map evaluated at a zero of its denominator.
inline constexpr std::uint64_t kPole = ~std::uint64_t{0};

/// psi = f / g over F_p with gcd(f, g) = 1. The denominator is stored monic.
class RationalMap {
 public:
  /// Throws ZeroPolynomial (g = 0), NotCoprime, InvalidArgument (degree 0).
  RationalMap(const FieldContext& ctx, UnivariatePoly num, UnivariatePoly den);

  /// "f" or "f / g" with f, g in the polynomial grammar using only X.
  static RationalMap parse(const FieldContext& ctx, std::string_view text);

  const FieldContext& field() const noexcept { return ctx_; }
  const UnivariatePoly& num() const noexcept { return num_; }
  const UnivariatePoly& den() const noexcept { return den_; }
  unsigned degree() const noexcept { return degree_; }
  /// alpha X^m with m a nonzero integer (f = alpha X^m, g = 1 or f = alpha, g = X^m).
  bool is_power_form() const noexcept;

  /// f(x) / g(x), or kPole when g(x) = 0.
  std::uint64_t operator()(std::uint64_t x) const;

  std::string to_string() const;
  bool operator==(const RationalMap& o) const { return num_ == o.num_ && den_ == o.den_; }

 private:
  FieldContext ctx_;
  UnivariatePoly num_, den_;
  unsigned degree_ = 0;
};

inline std::uint64_t step(const RationalMap& psi, std::uint64_t x) { return psi(x); }

/// psi(phi(X)), reduced.
RationalMap compose_maps(const RationalMap& psi, const RationalMap& phi);

class MapSystem {
 public:
  /// Throws InvalidArgument for an empty list or maps over different fields.
  explicit MapSystem(std::vector<RationalMap> maps);

  /// One map per nonblank line; '#' starts a comment.
  static MapSystem parse(const FieldContext& ctx, std::string_view text);

  const FieldContext& field() const noexcept { return maps_.front().field(); }
  std::size_t size() const noexcept { return maps_.size(); }
  const RationalMap& operator[](std::size_t i) const { return maps_[i]; }
  const std::vector<RationalMap>& maps() const noexcept { return maps_; }
  bool all_same_degree() const noexcept { return same_degree_; }
  bool any_power_form() const noexcept { return power_form_; }
  unsigned max_degree() const noexcept;
  /// Map degrees joined with ';' (for reports).
  std::string degrees_text() const;

 private:
  std::vector<RationalMap> maps_;
  bool same_degree_ = true;
  bool power_form_ = false;
};

inline constexpr unsigned kDefaultComposeCap = 512;

/// psi_{w_nu}( ... psi_{w_1}(X)) with 1-based indices; the first index acts
/// innermost. Throws InvalidArgument (empty word, index out of range) and
/// DegreeCapExceeded when the product of degrees exceeds the cap.
RationalMap compose(const MapSystem& sys, const std::vector<unsigned>& word, unsigned cap = kDefaultComposeCap);

enum class Metric { T, L, G };
enum class SearchMode { Exhaustive, Pruned, Sampled };
std::string_view to_string(Metric m);
std::string_view to_string(SearchMode m);
Metric parse_metric(std::string_view s);
SearchMode parse_mode(std::string_view s);

struct SearchOptions {
  SearchMode mode = SearchMode::Pruned;
  std::uint64_t node_budget = 1000000;
  /// Paths drawn in sampled mode.
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  /// Plain |a - b| on representatives in {0..p-1} instead of circular distance.
  bool integer_distance = false;
};

struct MetricReport {
  Metric metric = Metric::T;
  std::uint64_t value = 0;
  /// 1-based map indices j_1, j_2, ... of a path attaining the value; the
  /// lexicographically first one when the search is exact.
  std::vector<unsigned> witness;
  SearchMode mode = SearchMode::Pruned;
  std::uint64_t nodes = 0;
  bool exact = false;
  bool budget_exhausted = false;
  /// G only: every orbit element on the witness path was zero.
  bool all_zero_orbit = false;
  /// L and G: paths cut short by a pole (excluded from the minimum).
  std::uint64_t pole_paths = 0;
};

/// T: minimum over paths of the number of leading pairwise distinct elements.
/// A path hitting a pole at step n contributes n. A path still distinct after
/// u_0..u_cap contributes cap + 1. Default cap is p.
MetricReport collision_time(const MapSystem& sys, std::uint64_t u, std::optional<std::uint64_t> cap = std::nullopt,
                            const SearchOptions& opts = {});

/// L(N): minimum over full-length paths of the smallest radius of an arc
/// containing u_0..u_N. Throws NoCompletePath if every path hits a pole.
MetricReport interval_metric_L(const MapSystem& sys, std::uint64_t u, std::uint64_t n, const SearchOptions& opts = {});

/// G(N): minimum over full-length paths and v in F_p^* of #<v u_n>, zeros skipped.
MetricReport group_metric_G(const MapSystem& sys, std::uint64_t u, std::uint64_t n, const SearchOptions& opts = {});

/// Radius ceil((p - largest gap) / 2) of the smallest circular arc holding the
/// residues; with integer_distance, ceil((max - min) / 2).
std::uint64_t enclosing_radius(std::vector<std::uint64_t> values, std::uint64_t p, bool integer_distance = false);

/// Order of <ratios to the first nonzero value>; 1 for an all-zero orbit.
std::uint64_t ratio_group_order(const FieldContext& ctx, const std::vector<std::uint64_t>& values,
                                bool* all_zero = nullptr);

/// u_0, u_1, ... along the 1-based choices, stopping at a pole (kept as the last entry).
std::vector<std::uint64_t> simulate_path(const MapSystem& sys, std::uint64_t u, const std::vector<unsigned>& choices);

/// Recomputes the metric of one path (T uses the given cap, L and G use n = choices.size()).
std::uint64_t resimulate(const MapSystem& sys, std::uint64_t u, Metric metric, const std::vector<unsigned>& choices,
                         std::uint64_t cap, bool integer_distance = false);

// ---------------------------------------------------------------------------
// Theorem comparisons

/// min(N^(d^nu), p^(1 / (2 d^(2 nu) + d^nu - 1/2))).
double orbit_L_bound(std::uint64_t p, unsigned d, unsigned nu, std::uint64_t n);
/// min(N^(1/2) p^(1/2) / (d s^(1/2)), N^(3/2) / (d^2 s^(3/2))).
double orbit_G_bound(std::uint64_t p, unsigned d, std::size_t s, std::uint64_t n);

struct OrbitRow {
  Metric metric = Metric::L;
  std::uint64_t n = 0;
  MetricReport report;
  double bound_value = 0;
  double ratio = 0;
  /// False when the theorem's hypotheses fail (mixed degrees, d < 2, N > T).
  bool comparable = true;
  /// (N - nu) / s^nu.
  double pigeonhole = 0;
  /// Most frequent length-nu block of the witness path, as "i1.i2...".
  std::string frequent_block;
};

struct OrbitReport {
  std::uint64_t p = 0;
  std::uint64_t u = 0;
  unsigned nu = 1;
  MetricReport collision;
  std::vector<OrbitRow> rows;
};

/// Tabulates L and/or G against the bounds for each N. Requesting G for a
/// system with a power map throws PowerFormExcluded.
OrbitReport theorem_orbit_experiments(const MapSystem& sys, std::uint64_t u, const std::vector<std::uint64_t>& n_schedule,
                                      unsigned nu, bool with_l, bool with_g, const SearchOptions& opts = {});

}  // namespace curvecount

#endif  // CURVECOUNT_DYNAMICS_HPP
