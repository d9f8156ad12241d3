#ifndef CURVECOUNT_UPOLY_HPP
#define CURVECOUNT_UPOLY_HPP

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "curvecount/errors.hpp"
#include "curvecount/ff.hpp"
#include "curvecount/rng.hpp"

namespace curvecount {

/// Dense univariate polynomial; coeffs[i] multiplies X^i. Normalized so the
/// last coefficient is nonzero (the zero polynomial has no coefficients).
template <class F>
struct UPoly {
  std::vector<typename F::Elem> coeffs;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const noexcept { return coeffs.empty(); }
  bool operator==(const UPoly&) const = default;
};

using UnivariatePoly = UPoly<FieldContext>;

/// Arithmetic on UPoly<F> for a field policy F (FieldContext or ExtensionField).
template <class F>
class UPolyRing {
 public:
  using Elem = typename F::Elem;
  using Poly = UPoly<F>;

  explicit UPolyRing(const F& field) : f_(field) {}

  const F& field() const noexcept { return f_; }

  Poly normalize(Poly a) const {
    while (!a.coeffs.empty() && f_.is_zero(a.coeffs.back())) a.coeffs.pop_back();
    return a;
  }
  Poly from_coeffs(std::vector<Elem> c) const { return normalize(Poly{std::move(c)}); }
  Poly zero() const { return Poly{}; }
  Poly constant(const Elem& c) const { return normalize(Poly{{c}}); }
  Poly one() const { return constant(f_.one()); }
  Poly x() const { return Poly{{f_.zero(), f_.one()}}; }
  /// c * X^n
  Poly monomial(const Elem& c, unsigned n) const {
    if (f_.is_zero(c)) return Poly{};
    Poly r;
    r.coeffs.assign(n + 1, f_.zero());
    r.coeffs[n] = c;
    return r;
  }

  Elem lead(const Poly& a) const { return a.is_zero() ? f_.zero() : a.coeffs.back(); }
  bool is_one(const Poly& a) const { return a.coeffs.size() == 1 && f_.is_one(a.coeffs[0]); }

  Poly add(const Poly& a, const Poly& b) const {
    Poly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), f_.zero());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] = a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] = f_.add(r.coeffs[i], b.coeffs[i]);
    return normalize(std::move(r));
  }

  Poly sub(const Poly& a, const Poly& b) const {
    Poly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), f_.zero());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] = a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] = f_.sub(r.coeffs[i], b.coeffs[i]);
    return normalize(std::move(r));
  }

  Poly scale(const Poly& a, const Elem& c) const {
    if (f_.is_zero(c)) return Poly{};
    Poly r = a;
    for (auto& x : r.coeffs) x = f_.mul(x, c);
    return normalize(std::move(r));
  }

  Poly mul(const Poly& a, const Poly& b) const {
    if (a.is_zero() || b.is_zero()) return Poly{};
    Poly r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, f_.zero());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
      if (f_.is_zero(a.coeffs[i])) continue;
      for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
        r.coeffs[i + j] = f_.add(r.coeffs[i + j], f_.mul(a.coeffs[i], b.coeffs[j]));
      }
    }
    return normalize(std::move(r));
  }

  /// Quotient and remainder; throws ZeroPolynomial for b = 0.
  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const {
    if (b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by zero polynomial");
    if (a.degree() < b.degree()) return {Poly{}, a};
    const Elem inv_lead = f_.inv(b.coeffs.back());
    std::vector<Elem> rem = a.coeffs;
    const std::size_t db = b.coeffs.size() - 1;
    std::vector<Elem> quot(a.coeffs.size() - db, f_.zero());
    for (std::size_t k = quot.size(); k-- > 0;) {
      const Elem q = f_.mul(rem[k + db], inv_lead);
      quot[k] = q;
      if (f_.is_zero(q)) continue;
      for (std::size_t j = 0; j <= db; ++j) rem[k + j] = f_.sub(rem[k + j], f_.mul(q, b.coeffs[j]));
    }
    rem.resize(db);
    return {normalize(Poly{std::move(quot)}), normalize(Poly{std::move(rem)})};
  }

  Poly rem(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
  Poly quo(const Poly& a, const Poly& b) const { return divmod(a, b).first; }

  Poly monic(const Poly& a) const {
    if (a.is_zero()) return a;
    return scale(a, f_.inv(a.coeffs.back()));
  }

  /// Monic gcd; gcd(0, 0) = 0.
  Poly gcd(Poly a, Poly b) const {
    while (!b.is_zero()) {
      Poly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  struct Bezout {
    Poly g, s, t;  // s*a + t*b = g, g monic
  };

  Bezout xgcd(const Poly& a, const Poly& b) const {
    Poly r0 = a, r1 = b;
    Poly s0 = one(), s1 = zero();
    Poly t0 = zero(), t1 = one();
    while (!r1.is_zero()) {
      auto [q, r] = divmod(r0, r1);
      r0 = std::exchange(r1, std::move(r));
      s0 = std::exchange(s1, sub(s0, mul(q, s1)));
      t0 = std::exchange(t1, sub(t0, mul(q, t1)));
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const Elem c = f_.inv(r0.coeffs.back());
    return {scale(r0, c), scale(s0, c), scale(t0, c)};
  }

  Poly derivative(const Poly& a) const {
    if (a.coeffs.size() <= 1) return Poly{};
    Poly r;
    r.coeffs.resize(a.coeffs.size() - 1);
    for (std::size_t i = 1; i < a.coeffs.size(); ++i) {
      r.coeffs[i - 1] = f_.mul(a.coeffs[i], f_.from_int(static_cast<std::int64_t>(i % f_.characteristic())));
    }
    return normalize(std::move(r));
  }

  Elem eval(const Poly& a, const Elem& x) const {
    Elem acc = f_.zero();
    for (std::size_t i = a.coeffs.size(); i-- > 0;) acc = f_.add(f_.mul(acc, x), a.coeffs[i]);
    return acc;
  }

  Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const { return rem(mul(a, b), m); }

  /// base^e mod m for a nonnegative exponent.
  Poly powmod(Poly base, const BigInt& e, const Poly& m) const {
    if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
    Poly result = rem(one(), m);
    base = rem(base, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return result;
    for (std::size_t i = bits; i-- > 0;) {
      result = mulmod(result, result, m);
      if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, base, m);
    }
    return result;
  }

  Poly pow(Poly base, unsigned e) const {
    Poly result = one();
    while (e != 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  /// X^(q^s) mod m, where q is the field size, via s applications of the q-power map.
  Poly frobenius_power_of_x(unsigned s, const Poly& m) const {
    Poly h = rem(x(), m);
    const BigInt q = f_.order();
    for (unsigned i = 0; i < s; ++i) h = powmod(h, q, m);
    return h;
  }

  /// Composition a(b(X)).
  Poly compose(const Poly& a, const Poly& b) const {
    Poly acc;
    for (std::size_t i = a.coeffs.size(); i-- > 0;) acc = add(mul(acc, b), constant(a.coeffs[i]));
    return acc;
  }

  /// Rabin's test: f of degree n is irreducible iff X^(q^n) = X mod f and
  /// gcd(X^(q^(n/r)) - X, f) = 1 for every prime r | n.
  bool is_irreducible(const Poly& f) const {
    const int n = f.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    const Poly mf = monic(f);
    for (const PrimePower& r : factor_u64(static_cast<std::uint64_t>(n))) {
      const Poly h = frobenius_power_of_x(static_cast<unsigned>(n / r.prime), mf);
      if (!is_one(gcd(sub(h, x()), mf))) return false;
    }
    return sub(frobenius_power_of_x(static_cast<unsigned>(n), mf), rem(x(), mf)).is_zero();
  }

  Poly random(Rng& rng, int max_degree) const {
    Poly r;
    r.coeffs.resize(static_cast<std::size_t>(max_degree + 1));
    for (auto& c : r.coeffs) c = f_.random(rng);
    return normalize(std::move(r));
  }

 private:
  const F& f_;
};

}  // namespace curvecount

#endif  // CURVECOUNT_UPOLY_HPP
