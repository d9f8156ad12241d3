#include "curvecount/ext_field.hpp"

#include <algorithm>

namespace curvecount {

ExtensionField::ExtensionField(const FieldContext& base, UnivariatePoly modulus, unsigned cap)
    : base_(base), k_(0) {
  UPolyRing<FieldContext> ring(base_);
  modulus = ring.normalize(std::move(modulus));
  if (modulus.degree() < 1) throw Error(ErrorCode::NotIrreducible, "extension modulus must have degree >= 1");
  if (static_cast<unsigned>(modulus.degree()) > cap) {
    throw Error(ErrorCode::ExtensionTooLarge,
                "degree " + std::to_string(modulus.degree()) + " exceeds cap " + std::to_string(cap));
  }
  if (!ring.is_irreducible(modulus)) throw Error(ErrorCode::NotIrreducible, "extension modulus is reducible");
  modulus_ = ring.monic(modulus);
  k_ = static_cast<unsigned>(modulus_.degree());
}

ExtensionField ExtensionField::make(const FieldContext& base, unsigned k, std::uint64_t seed, unsigned cap) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
  if (k > cap) throw Error(ErrorCode::ExtensionTooLarge, "degree " + std::to_string(k) + " exceeds cap");
  UPolyRing<FieldContext> ring(base);
  Rng rng(seed);
  for (;;) {
    std::vector<std::uint64_t> c(k + 1);
    for (unsigned i = 0; i < k; ++i) c[i] = base.random(rng);
    c[k] = 1;
    UnivariatePoly m = ring.from_coeffs(std::move(c));
    if (ring.is_irreducible(m)) return ExtensionField(base, std::move(m), cap);
  }
}

BigInt ExtensionField::order() const {
  BigInt q;
  mpz_ui_pow_ui(q.get_mpz_t(), base_.modulus(), k_);
  return q;
}

ExtensionField::Elem ExtensionField::generator() const {
  if (k_ == 1) {
    // t is the root of X - c, so t = c.
    return embed(base_.neg(modulus_.coeffs[0]));
  }
  Elem r(k_, 0);
  r[1] = 1;
  return r;
}

bool ExtensionField::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](std::uint64_t c) { return c == 0; });
}

bool ExtensionField::is_one(const Elem& a) const {
  if (a[0] != 1) return false;
  return std::all_of(a.begin() + 1, a.end(), [](std::uint64_t c) { return c == 0; });
}

ExtensionField::Elem ExtensionField::add(const Elem& a, const Elem& b) const {
  Elem r(k_);
  for (unsigned i = 0; i < k_; ++i) r[i] = base_.add(a[i], b[i]);
  return r;
}

ExtensionField::Elem ExtensionField::sub(const Elem& a, const Elem& b) const {
  Elem r(k_);
  for (unsigned i = 0; i < k_; ++i) r[i] = base_.sub(a[i], b[i]);
  return r;
}

ExtensionField::Elem ExtensionField::neg(const Elem& a) const {
  Elem r(k_);
  for (unsigned i = 0; i < k_; ++i) r[i] = base_.neg(a[i]);
  return r;
}

ExtensionField::Elem ExtensionField::mul(const Elem& a, const Elem& b) const {
  const std::uint64_t p = base_.modulus();
  // Accumulate in 128 bits and reduce once per output coefficient.
  std::vector<unsigned __int128> acc(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) {
      acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j] % p;
    }
  }
  std::vector<std::uint64_t> t(2 * k_ - 1);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<std::uint64_t>(acc[i] % p);
  // Reduce by the monic modulus from the top down.
  for (std::size_t d = t.size(); d-- > k_;) {
    const std::uint64_t c = t[d];
    if (c == 0) continue;
    t[d] = 0;
    for (unsigned j = 0; j < k_; ++j) {
      t[d - k_ + j] = base_.sub(t[d - k_ + j], base_.mul(c, modulus_.coeffs[j]));
    }
  }
  t.resize(k_);
  return t;
}

ExtensionField::Elem ExtensionField::pow(const Elem& a, const BigInt& e) const {
  if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  Elem result = one();
  if (e == 0) return result;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mul(result, result);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mul(result, a);
  }
  return result;
}

ExtensionField::Elem ExtensionField::inv(const Elem& a) const {
  UPolyRing<FieldContext> ring(base_);
  const UnivariatePoly pa = ring.from_coeffs(a);
  if (pa.is_zero()) throw Error(ErrorCode::NotInvertible, "inverse of zero in extension field");
  auto bz = ring.xgcd(pa, modulus_);
  if (!ring.is_one(bz.g)) throw Error(ErrorCode::NotInvertible, "element shares a factor with the modulus");
  Elem r(k_, 0);
  const UnivariatePoly s = ring.rem(bz.s, modulus_);
  std::copy(s.coeffs.begin(), s.coeffs.end(), r.begin());
  return r;
}

ExtensionField::Elem ExtensionField::frobenius_root(const Elem& a) const {
  BigInt e;
  mpz_ui_pow_ui(e.get_mpz_t(), base_.modulus(), k_ - 1);
  return pow(a, e);
}

ExtensionField::Elem ExtensionField::random(Rng& rng) const {
  Elem r(k_);
  for (auto& c : r) c = base_.random(rng);
  return r;
}

std::string ExtensionField::to_string(const Elem& a) const {
  std::string s = "[";
  for (unsigned i = 0; i < k_; ++i) {
    if (i != 0) s += ",";
    s += std::to_string(a[i]);
  }
  return s + "]";
}

}  // namespace curvecount
