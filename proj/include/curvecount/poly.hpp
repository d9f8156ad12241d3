#ifndef CURVECOUNT_POLY_HPP
#define CURVECOUNT_POLY_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "curvecount/bipoly.hpp"
#include "curvecount/ff.hpp"

namespace curvecount {

/// Coefficient ring tag: the integers, or F_p carrying its FieldContext.
class CoeffDomain {
 public:
  static CoeffDomain integers() { return CoeffDomain(nullptr); }
  static CoeffDomain modular(std::uint64_t p) {
    return CoeffDomain(std::make_shared<const FieldContext>(FieldContext::make(p)));
  }
  static CoeffDomain modular(const FieldContext& ctx) {
    return CoeffDomain(std::make_shared<const FieldContext>(ctx));
  }

  bool is_integer() const noexcept { return field_ == nullptr; }
  bool is_modular() const noexcept { return field_ != nullptr; }
  /// Throws DomainMismatch in the integer domain.
  const FieldContext& field() const;
  std::uint64_t modulus() const noexcept { return field_ ? field_->modulus() : 0; }

  bool operator==(const CoeffDomain& o) const noexcept { return modulus() == o.modulus(); }

 private:
  explicit CoeffDomain(std::shared_ptr<const FieldContext> f) : field_(std::move(f)) {}
  std::shared_ptr<const FieldContext> field_;
};

/// Exact sparse bivariate polynomial over F_p or over the integers.
///
/// The same representation serves both domains: coefficients are arbitrary
/// precision integers, and in the modular domain they are kept as canonical
/// residues in [1, p). Zero coefficients are never stored. Values are
/// immutable; every operation returns a new polynomial.
class BivariatePoly {
 public:
  using TermMap = std::map<Exponent, BigInt>;

  explicit BivariatePoly(CoeffDomain domain) : domain_(std::move(domain)) {}
  BivariatePoly(CoeffDomain domain, TermMap terms);

  static BivariatePoly constant(const CoeffDomain& d, const BigInt& c) { return monomial(d, c, 0, 0); }
  static BivariatePoly monomial(const CoeffDomain& d, const BigInt& c, unsigned i, unsigned j);
  static BivariatePoly from_field(const CoeffDomain& d, const BiPoly<FieldContext>& f);

  const CoeffDomain& domain() const noexcept { return domain_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  /// -1 for the zero polynomial.
  int total_degree() const noexcept { return deg_; }
  int degree_x() const noexcept { return deg_x_; }
  int degree_y() const noexcept { return deg_y_; }
  BigInt coefficient(Exponent e) const;

  BivariatePoly operator+(const BivariatePoly& o) const;
  BivariatePoly operator-(const BivariatePoly& o) const;
  BivariatePoly operator*(const BivariatePoly& o) const;
  BivariatePoly operator-() const;
  BivariatePoly pow(unsigned e) const;
  BivariatePoly scaled(const BigInt& c) const;

  /// Exact value over the integers (integer domain) or canonical residue (modular).
  BigInt eval(const BigInt& x, const BigInt& y) const;
  std::uint64_t eval_mod(std::uint64_t x, std::uint64_t y) const;

  BivariatePoly swap_xy() const;
  /// Reinterprets the coefficients in another domain (reducing mod p if modular).
  BivariatePoly with_domain(const CoeffDomain& d) const { return BivariatePoly(d, terms_); }
  /// Modular domain only.
  BiPoly<FieldContext> to_field() const;

  /// Canonical text accepted by parse_poly; graded by total degree, then by X power.
  std::string to_string(const char* x_name = "X", const char* y_name = "Y") const;

  bool operator==(const BivariatePoly& o) const { return domain_ == o.domain_ && terms_ == o.terms_; }

 private:
  void canonicalize();

  CoeffDomain domain_;
  TermMap terms_;
  int deg_ = -1;
  int deg_x_ = -1;
  int deg_y_ = -1;
};

/// Number of lattice points (k, l) with k <= i, l <= j for some support point (i, j).
/// Throws ZeroPolynomial.
std::size_t delta(const BivariatePoly& f);

/// F(X + a, Y + b); modular domain only (DomainMismatch otherwise).
BivariatePoly shift(const BivariatePoly& f, std::uint64_t a, std::uint64_t b);

/// F(X, Y^n); throws InvalidArgument for n = 0.
BivariatePoly substitute_y_power(const BivariatePoly& f, unsigned n);

}  // namespace curvecount

#endif  // CURVECOUNT_POLY_HPP
