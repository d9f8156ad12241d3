#ifndef CURVECOUNT_FF_HPP
#define CURVECOUNT_FF_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "curvecount/errors.hpp"
#include "curvecount/rng.hpp"

namespace curvecount {

using BigInt = mpz_class;

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  bool operator==(const PrimePower&) const = default;
};

// Integer helpers shared by several modules.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Deterministic Miller-Rabin, exact for every n < 2^64.
bool is_prime_u64(std::uint64_t n);
/// Trial division up to 2^20, then Pollard rho (Brent) on the cofactor.
std::vector<PrimePower> factor_u64(std::uint64_t n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

/// The prime field F_p, 3 <= p < 2^63, with p-1 factored and a primitive root.
///
/// Elements are canonical residues in [0, p). The class doubles as the
/// field policy for the generic polynomial code (see upoly.hpp), which is why
/// it carries zero()/one()/add()/... members.
class FieldContext {
 public:
  using Elem = std::uint64_t;

  /// Verifies primality, factors p-1 and searches 2, 3, 5, ... for a generator.
  static FieldContext make(std::uint64_t p);

  std::uint64_t modulus() const noexcept { return p_; }
  std::uint64_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return 1; }
  BigInt order() const { return BigInt(static_cast<unsigned long>(p_)); }
  const std::vector<PrimePower>& factorization() const noexcept { return factorization_; }
  Elem primitive_root() const noexcept { return primitive_root_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  bool is_zero(Elem a) const noexcept { return a == 0; }
  bool is_one(Elem a) const noexcept { return a == 1; }
  bool equal(Elem a, Elem b) const noexcept { return a == b; }

  Elem add(Elem a, Elem b) const noexcept {
    const Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const noexcept { return mul_mod(a, b, p_); }
  Elem pow(Elem a, std::uint64_t e) const noexcept { return pow_mod(a, e, p_); }
  Elem pow(Elem a, const BigInt& e) const;
  /// Throws ZeroElement for 0.
  Elem inv(Elem a) const;

  Elem from_int(std::int64_t v) const noexcept;
  Elem from_big(const BigInt& v) const;
  /// Inverse of the Frobenius map; the identity on F_p.
  Elem frobenius_root(Elem a) const noexcept { return a; }
  Elem random(Rng& rng) const { return rng.below(p_); }
  std::string to_string(Elem a) const { return std::to_string(a); }

  /// Least t >= 1 with x^t = 1. Throws ZeroElement for x = 0.
  std::uint64_t element_order(Elem x) const;

  bool operator==(const FieldContext& o) const noexcept { return p_ == o.p_; }

 private:
  FieldContext() = default;

  std::uint64_t p_ = 0;
  std::vector<PrimePower> factorization_;
  Elem primitive_root_ = 0;
};

inline FieldContext make_context(std::uint64_t p) { return FieldContext::make(p); }

/// Elements beyond this many are not materialized; membership falls back to x^e = 1.
inline constexpr std::uint64_t kDefaultSubgroupCap = std::uint64_t{1} << 20;

/// The unique subgroup of F_p^* of a given order e | p-1.
class Subgroup {
 public:
  Subgroup(const FieldContext& ctx, std::uint64_t order, std::uint64_t cap = kDefaultSubgroupCap);

  std::uint64_t order() const noexcept { return order_; }
  FieldContext::Elem generator() const noexcept { return generator_; }
  std::uint64_t modulus() const noexcept { return p_; }
  /// Sorted element list, when order <= cap.
  const std::optional<std::vector<std::uint64_t>>& elements() const noexcept { return elements_; }
  bool contains(std::uint64_t x) const;

 private:
  std::uint64_t p_;
  std::uint64_t order_;
  FieldContext::Elem generator_;
  std::optional<std::vector<std::uint64_t>> elements_;
};

/// Throws NotADivisor unless e | p-1.
Subgroup subgroup_of_order(const FieldContext& ctx, std::uint64_t e,
                           std::uint64_t cap = kDefaultSubgroupCap);

inline std::uint64_t element_order(const FieldContext& ctx, std::uint64_t x) {
  return ctx.element_order(x);
}

/// Order of <gens>: lcm of element orders (F_p^* is cyclic). Empty input gives 1.
std::uint64_t generated_subgroup_order(const FieldContext& ctx, std::span<const std::uint64_t> gens);

}  // namespace curvecount

#endif  // CURVECOUNT_FF_HPP
