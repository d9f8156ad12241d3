#ifndef CURVECOUNT_EXT_FIELD_HPP
#define CURVECOUNT_EXT_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "curvecount/ff.hpp"
#include "curvecount/upoly.hpp"

namespace curvecount {

inline constexpr unsigned kDefaultExtensionCap = 8;

/// F_{p^k} = F_p[t] / (modulus). Elements are coefficient vectors of length k
/// (index i multiplies t^i).
class ExtensionField {
 public:
  using Elem = std::vector<std::uint64_t>;

  /// Throws NotIrreducible if modulus is not irreducible of degree >= 1, and
  /// ExtensionTooLarge if its degree exceeds cap.
  ExtensionField(const FieldContext& base, UnivariatePoly modulus, unsigned cap = kDefaultExtensionCap);

  /// Finds a monic irreducible modulus of degree k by seeded random search.
  static ExtensionField make(const FieldContext& base, unsigned k, std::uint64_t seed = 1,
                             unsigned cap = kDefaultExtensionCap);

  const FieldContext& base() const noexcept { return base_; }
  unsigned degree() const noexcept { return k_; }
  const UnivariatePoly& modulus() const noexcept { return modulus_; }
  std::uint64_t characteristic() const noexcept { return base_.modulus(); }
  BigInt order() const;

  Elem zero() const { return Elem(k_, 0); }
  Elem one() const {
    Elem r(k_, 0);
    r[0] = 1;
    return r;
  }
  /// The class of t, i.e. the generator of the power basis.
  Elem generator() const;
  Elem embed(std::uint64_t a) const {
    Elem r(k_, 0);
    r[0] = a % base_.modulus();
    return r;
  }
  bool is_zero(const Elem& a) const;
  bool is_one(const Elem& a) const;
  bool equal(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, const BigInt& e) const;
  Elem pow(const Elem& a, std::uint64_t e) const { return pow(a, BigInt(static_cast<unsigned long>(e))); }
  /// Extended Euclid against the modulus; NotInvertible when gcd != 1.
  Elem inv(const Elem& a) const;

  Elem from_int(std::int64_t v) const { return embed(base_.from_int(v)); }
  Elem from_big(const BigInt& v) const { return embed(base_.from_big(v)); }
  /// p-th root: a^(p^(k-1)).
  Elem frobenius_root(const Elem& a) const;
  Elem random(Rng& rng) const;
  std::string to_string(const Elem& a) const;

 private:
  FieldContext base_;
  unsigned k_;
  UnivariatePoly modulus_;  // monic
};

}  // namespace curvecount

#endif  // CURVECOUNT_EXT_FIELD_HPP
