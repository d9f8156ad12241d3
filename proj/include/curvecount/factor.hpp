#ifndef CURVECOUNT_FACTOR_HPP
#define CURVECOUNT_FACTOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvecount/bipoly.hpp"
#include "curvecount/ext_field.hpp"
#include "curvecount/poly.hpp"

namespace curvecount {

inline constexpr std::uint64_t kDefaultFactorSeed = 0x5eed;

template <class F>
struct Factorization {
  typename F::Elem unit;
  /// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
  std::vector<std::pair<UPoly<F>, unsigned>> factors;
  unsigned level = 1;  // k for F_{p^k}
};

/// Squarefree decomposition, distinct-degree split, then Cantor-Zassenhaus
/// equal-degree split driven by an Rng seeded with `seed`.
/// Throws ZeroPolynomial.
template <class F>
Factorization<F> factor_univariate(const F& field, const UPoly<F>& f, std::uint64_t seed = kDefaultFactorSeed);

/// Roots in F_p of a nonzero polynomial (sorted, without multiplicity).
std::vector<std::uint64_t> roots_in_prime_field(const FieldContext& field, const UnivariatePoly& f,
                                                std::uint64_t seed = kDefaultFactorSeed);

struct IrreducibilityOptions {
  unsigned degree_cap = 6;
  /// Candidate products tried during Kronecker recombination before giving up.
  std::uint64_t subset_budget = std::uint64_t{1} << 22;
  std::uint64_t seed = kDefaultFactorSeed;
};

/// Result of an irreducibility search. When reducible, `factor` divides the
/// input exactly with quotient `cofactor` (both verified by trial division).
template <class F>
struct IrreducibilityCertificate {
  bool irreducible = true;
  std::optional<BiPoly<F>> factor;
  std::optional<BiPoly<F>> cofactor;
};

/// Irreducibility over the field itself. Monomial and content factors are
/// split off first; polynomials linear in a variable and content-free are
/// accepted directly; otherwise Kronecker substitution Y := X^(deg_X + 1)
/// (or the mirrored one when smaller) and a search over sub-multisets of the
/// univariate factors. Throws DegreeTooLarge, ZeroPolynomial (also for
/// constants), BudgetExceeded.
template <class F>
IrreducibilityCertificate<F> irreducibility_certificate(const F& field, const BiPoly<F>& f,
                                                        const IrreducibilityOptions& opts = {});

/// Irreducibility over F_p for a modular polynomial.
bool is_irreducible_bivariate(const BivariatePoly& f, const IrreducibilityOptions& opts = {});

/// Irreducibility of a modular polynomial over F_{p^k} (k = 1 uses F_p directly).
bool is_irreducible_over_extension(const BivariatePoly& f, unsigned k, const IrreducibilityOptions& opts = {});

struct AbsoluteIrreducibility {
  bool absolutely_irreducible = true;
  /// Smallest k <= d at which a factorization was found, 0 if none.
  unsigned split_level = 0;
  /// Human-readable factor and cofactor over F_{p^k} (coefficients as t-vectors).
  std::string factor_text;
  std::string cofactor_text;
  bool certificate_verified = false;
};

/// Checks irreducibility over F_{p^k} for k = 1, ..., total degree.
AbsoluteIrreducibility absolute_irreducibility(const BivariatePoly& f, const IrreducibilityOptions& opts = {});

inline bool is_absolutely_irreducible(const BivariatePoly& f, const IrreducibilityOptions& opts = {}) {
  return absolute_irreducibility(f, opts).absolutely_irreducible;
}

struct FxynCheck {
  bool holds = true;
  std::optional<unsigned> first_failure;
  /// The hypothesis is only ever "verified up to n_max".
  unsigned verified_up_to = 0;
};

/// Irreducibility over F_p of F(X, Y^n) for n = 1 .. n_max. Throws
/// DegreeTooLarge naming the first n that exceeds the degree cap.
FxynCheck check_fxyn_hypothesis(const BivariatePoly& f, unsigned n_max, const IrreducibilityOptions& opts = {});

/// alpha X^m Y^n + beta (product) or alpha X^m + beta Y^n (split).
struct TorsionForm {
  enum class Shape { Product, Split };
  Shape shape = Shape::Product;
  unsigned m = 0;
  unsigned n = 0;
  std::uint64_t alpha = 1;
  std::uint64_t beta = 0;

  BivariatePoly to_poly(const CoeffDomain& d) const;
  bool operator==(const TorsionForm&) const = default;
};

std::string to_string(const TorsionForm& t);

/// Recognizes a two-term polynomial of torsion shape. A product form needs a
/// constant term and (m, n) != (0, 0); a split form needs m, n >= 1.
std::optional<TorsionForm> is_torsion_form(const BivariatePoly& f);

inline constexpr std::uint64_t kTorsionSearchModulusCap = std::uint64_t{1} << 20;

/// Searches normalized torsion forms (alpha = 1, beta in F_p^*, 1 <= m <= deg_X R,
/// 1 <= n <= deg_Y R) for an exact divisor of R. Products come before splits,
/// then increasing m, n, beta, so the first hit is the lexicographically
/// smallest witness. Throws ModulusTooLarge when p exceeds the cap.
std::optional<TorsionForm> divisible_by_torsion_form(const BivariatePoly& r,
                                                     std::uint64_t modulus_cap = kTorsionSearchModulusCap);

}  // namespace curvecount

#endif  // CURVECOUNT_FACTOR_HPP
