#ifndef CURVECOUNT_BIPOLY_HPP
#define CURVECOUNT_BIPOLY_HPP

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "curvecount/upoly.hpp"

namespace curvecount {

/// Exponent pair (i, j) of the monomial X^i Y^j. Ordered lexicographically
/// with X first, which is the term order used for exact division.
struct Exponent {
  unsigned x = 0;
  unsigned y = 0;
  auto operator<=>(const Exponent&) const = default;
};

/// Sparse bivariate polynomial over a field policy F; no stored zero coefficients.
template <class F>
struct BiPoly {
  std::map<Exponent, typename F::Elem> terms;
  bool is_zero() const noexcept { return terms.empty(); }
  bool operator==(const BiPoly&) const = default;
};

template <class F>
class BiPolyRing {
 public:
  using Elem = typename F::Elem;
  using Poly = BiPoly<F>;
  using Uni = UPoly<F>;

  explicit BiPolyRing(const F& field) : f_(field) {}

  const F& field() const noexcept { return f_; }

  Poly monomial(const Elem& c, unsigned i, unsigned j) const {
    Poly r;
    if (!f_.is_zero(c)) r.terms.emplace(Exponent{i, j}, c);
    return r;
  }
  Poly constant(const Elem& c) const { return monomial(c, 0, 0); }

  void add_term(Poly& a, Exponent e, const Elem& c) const {
    if (f_.is_zero(c)) return;
    auto it = a.terms.find(e);
    if (it == a.terms.end()) {
      a.terms.emplace(e, c);
      return;
    }
    it->second = f_.add(it->second, c);
    if (f_.is_zero(it->second)) a.terms.erase(it);
  }

  Poly add(Poly a, const Poly& b) const {
    for (const auto& [e, c] : b.terms) add_term(a, e, c);
    return a;
  }
  Poly sub(Poly a, const Poly& b) const {
    for (const auto& [e, c] : b.terms) add_term(a, e, f_.neg(c));
    return a;
  }
  Poly scale(const Poly& a, const Elem& c) const {
    Poly r;
    if (f_.is_zero(c)) return r;
    for (const auto& [e, v] : a.terms) r.terms.emplace(e, f_.mul(v, c));
    return r;
  }
  Poly mul(const Poly& a, const Poly& b) const {
    Poly r;
    for (const auto& [ea, ca] : a.terms) {
      for (const auto& [eb, cb] : b.terms) add_term(r, Exponent{ea.x + eb.x, ea.y + eb.y}, f_.mul(ca, cb));
    }
    return r;
  }
  Poly pow(Poly base, unsigned e) const {
    Poly result = constant(f_.one());
    while (e != 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  int total_degree(const Poly& a) const {
    int d = -1;
    for (const auto& [e, c] : a.terms) d = std::max(d, static_cast<int>(e.x + e.y));
    return d;
  }
  int degree_x(const Poly& a) const {
    int d = -1;
    for (const auto& [e, c] : a.terms) d = std::max(d, static_cast<int>(e.x));
    return d;
  }
  int degree_y(const Poly& a) const {
    int d = -1;
    for (const auto& [e, c] : a.terms) d = std::max(d, static_cast<int>(e.y));
    return d;
  }

  /// Quotient when b divides a exactly, otherwise nullopt. Lex division: if b | a
  /// then every intermediate leading term is divisible by LT(b).
  std::optional<Poly> exact_divide(Poly a, const Poly& b) const {
    if (b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by zero polynomial");
    const auto& [lb, cb] = *b.terms.rbegin();
    const Elem inv_cb = f_.inv(cb);
    Poly q;
    while (!a.is_zero()) {
      const auto [la, ca] = *a.terms.rbegin();
      if (la.x < lb.x || la.y < lb.y) return std::nullopt;
      const Exponent shift{la.x - lb.x, la.y - lb.y};
      const Elem c = f_.mul(ca, inv_cb);
      q.terms.emplace(shift, c);
      for (const auto& [e, v] : b.terms) add_term(a, Exponent{e.x + shift.x, e.y + shift.y}, f_.neg(f_.mul(v, c)));
    }
    return q;
  }
  bool divides(const Poly& divisor, const Poly& a) const { return exact_divide(a, divisor).has_value(); }

  Elem eval(const Poly& a, const Elem& x, const Elem& y) const {
    Elem acc = f_.zero();
    for (const auto& [e, c] : a.terms) acc = f_.add(acc, f_.mul(c, f_.mul(f_.pow(x, e.x), f_.pow(y, e.y))));
    return acc;
  }

  /// F(x, Y) as a polynomial in Y.
  Uni specialize_x(const Poly& a, const Elem& x) const {
    UPolyRing<F> ring(f_);
    std::vector<Elem> c(static_cast<std::size_t>(std::max(degree_y(a), 0)) + 1, f_.zero());
    for (const auto& [e, v] : a.terms) c[e.y] = f_.add(c[e.y], f_.mul(v, f_.pow(x, e.x)));
    return ring.from_coeffs(std::move(c));
  }
  /// F(X, y) as a polynomial in X.
  Uni specialize_y(const Poly& a, const Elem& y) const {
    UPolyRing<F> ring(f_);
    std::vector<Elem> c(static_cast<std::size_t>(std::max(degree_x(a), 0)) + 1, f_.zero());
    for (const auto& [e, v] : a.terms) c[e.x] = f_.add(c[e.x], f_.mul(v, f_.pow(y, e.y)));
    return ring.from_coeffs(std::move(c));
  }

  /// Coefficients f_j(X) with F = sum_j f_j(X) Y^j.
  std::vector<Uni> coeffs_in_y(const Poly& a) const {
    UPolyRing<F> ring(f_);
    const int dy = std::max(degree_y(a), 0);
    const int dx = std::max(degree_x(a), 0);
    std::vector<std::vector<Elem>> raw(static_cast<std::size_t>(dy) + 1,
                                       std::vector<Elem>(static_cast<std::size_t>(dx) + 1, f_.zero()));
    for (const auto& [e, v] : a.terms) raw[e.y][e.x] = v;
    std::vector<Uni> out;
    out.reserve(raw.size());
    for (auto& r : raw) out.push_back(ring.from_coeffs(std::move(r)));
    return out;
  }

  /// Embeds a polynomial in X (as_y = false) or in Y (as_y = true).
  Poly from_univariate(const Uni& u, bool as_y) const {
    Poly r;
    for (std::size_t i = 0; i < u.coeffs.size(); ++i) {
      if (f_.is_zero(u.coeffs[i])) continue;
      const auto k = static_cast<unsigned>(i);
      r.terms.emplace(as_y ? Exponent{0, k} : Exponent{k, 0}, u.coeffs[i]);
    }
    return r;
  }

  Poly swap_xy(const Poly& a) const {
    Poly r;
    for (const auto& [e, c] : a.terms) r.terms.emplace(Exponent{e.y, e.x}, c);
    return r;
  }

  /// Kronecker substitution Y := X^base.
  Uni kronecker(const Poly& a, unsigned base) const {
    UPolyRing<F> ring(f_);
    int deg = 0;
    for (const auto& [e, c] : a.terms) deg = std::max(deg, static_cast<int>(e.x + base * e.y));
    std::vector<Elem> c(static_cast<std::size_t>(deg) + 1, f_.zero());
    for (const auto& [e, v] : a.terms) {
      auto& slot = c[e.x + base * e.y];
      slot = f_.add(slot, v);
    }
    return ring.from_coeffs(std::move(c));
  }

  /// Inverse of kronecker() on polynomials with deg_X < base.
  Poly kronecker_inverse(const Uni& u, unsigned base) const {
    Poly r;
    for (std::size_t i = 0; i < u.coeffs.size(); ++i) {
      if (f_.is_zero(u.coeffs[i])) continue;
      const auto k = static_cast<unsigned>(i);
      r.terms.emplace(Exponent{k % base, k / base}, u.coeffs[i]);
    }
    return r;
  }

  /// Scales so that the lex-leading coefficient is one.
  Poly monic(const Poly& a) const {
    if (a.is_zero()) return a;
    return scale(a, f_.inv(a.terms.rbegin()->second));
  }

 private:
  const F& f_;
};

}  // namespace curvecount

#endif  // CURVECOUNT_BIPOLY_HPP
