#include "curvecount/resultant.hpp"

#include <algorithm>

#include "curvecount/bipoly.hpp"

namespace curvecount {

namespace {

using Ring = UPolyRing<FieldContext>;
using BiRing = BiPolyRing<FieldContext>;
using Bi = BiPoly<FieldContext>;

// Resultant of a and b at their actual degrees (both nonzero).
std::uint64_t euclid_resultant(const Ring& ring, UnivariatePoly a, UnivariatePoly b) {
  const FieldContext& f = ring.field();
  std::uint64_t acc = 1;
  for (;;) {
    const int m = a.degree();
    const int n = b.degree();
    if (n == 0) return f.mul(acc, f.pow(b.coeffs[0], static_cast<std::uint64_t>(m)));
    if (m == 0) return f.mul(acc, f.pow(a.coeffs[0], static_cast<std::uint64_t>(n)));
    // Res(A, B) = (-1)^(mn) lc(B)^(m - deg R) Res(B, R), R = A mod B.
    UnivariatePoly r = ring.rem(a, b);
    if (r.is_zero()) return 0;
    if ((static_cast<long>(m) * n) % 2 == 1) acc = f.neg(acc);
    acc = f.mul(acc, f.pow(ring.lead(b), static_cast<std::uint64_t>(m - r.degree())));
    a = std::move(b);
    b = std::move(r);
  }
}

void check_inputs(const BivariatePoly& a, const BivariatePoly& b) {
  if (!a.domain().is_modular() || !(a.domain() == b.domain())) {
    throw Error(ErrorCode::DomainMismatch, "resultant needs two polynomials over the same F_p");
  }
  if (a.is_zero() || b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "resultant of zero polynomial");
  if (a.degree_x() == 0 || b.degree_x() == 0) throw Error(ErrorCode::DegenerateInX, "input has X-degree 0");
}

BivariatePoly via_interpolation(const BivariatePoly& a, const BivariatePoly& b) {
  const FieldContext& f = a.domain().field();
  Ring ring(f);
  BiRing bring(f);
  const int m = a.degree_x(), n = b.degree_x();
  const int gu = n * std::max(a.degree_y(), 0);
  const int gv = m * std::max(b.degree_y(), 0);
  const Bi fa = a.to_field(), fb = b.to_field();

  std::vector<UnivariatePoly> a_at(static_cast<std::size_t>(gu) + 1), b_at(static_cast<std::size_t>(gv) + 1);
  std::vector<std::uint64_t> us(a_at.size()), vs(b_at.size());
  for (std::size_t s = 0; s < a_at.size(); ++s) {
    us[s] = s;
    a_at[s] = bring.specialize_y(fa, s);
  }
  for (std::size_t t = 0; t < b_at.size(); ++t) {
    vs[t] = t;
    b_at[t] = bring.specialize_y(fb, t);
  }

  // For each U sample, interpolate in V; then interpolate each V coefficient in U.
  std::vector<UnivariatePoly> rows(a_at.size());
  for (std::size_t s = 0; s < a_at.size(); ++s) {
    std::vector<std::uint64_t> vals(b_at.size());
    for (std::size_t t = 0; t < b_at.size(); ++t) vals[t] = scalar_resultant(f, a_at[s], b_at[t], m, n);
    rows[s] = interpolate(f, vs, vals);
  }
  Bi out;
  for (std::size_t k = 0; k < b_at.size(); ++k) {
    std::vector<std::uint64_t> vals(a_at.size());
    for (std::size_t s = 0; s < a_at.size(); ++s) vals[s] = k < rows[s].coeffs.size() ? rows[s].coeffs[k] : 0;
    const UnivariatePoly col = interpolate(f, us, vals);
    for (std::size_t i = 0; i < col.coeffs.size(); ++i) {
      bring.add_term(out, Exponent{static_cast<unsigned>(i), static_cast<unsigned>(k)}, col.coeffs[i]);
    }
  }
  return BivariatePoly::from_field(a.domain(), out);
}

BivariatePoly via_sylvester(const BivariatePoly& a, const BivariatePoly& b) {
  const FieldContext& f = a.domain().field();
  BiRing bring(f);
  const auto m = static_cast<std::size_t>(a.degree_x());
  const auto n = static_cast<std::size_t>(b.degree_x());
  const std::size_t size = m + n;

  // Coefficient of X^i: in U (X slot of the output) for A, in V (Y slot) for B.
  std::vector<Bi> ca(m + 1), cb(n + 1);
  for (const auto& [e, c] : a.to_field().terms) bring.add_term(ca[e.x], Exponent{e.y, 0}, c);
  for (const auto& [e, c] : b.to_field().terms) bring.add_term(cb[e.x], Exponent{0, e.y}, c);

  std::vector<std::vector<Bi>> mat(size, std::vector<Bi>(size));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i <= m; ++i) mat[r][r + i] = ca[m - i];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; i <= n; ++i) mat[n + r][r + i] = cb[n - i];
  }

  // Bareiss fraction-free elimination; every division below is exact.
  bool negate = false;
  Bi prev = bring.constant(1);
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (mat[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < size && mat[piv][k].is_zero()) ++piv;
      if (piv == size) return BivariatePoly(a.domain());
      std::swap(mat[k], mat[piv]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        Bi num = bring.sub(bring.mul(mat[k][k], mat[i][j]), bring.mul(mat[i][k], mat[k][j]));
        auto q = bring.exact_divide(std::move(num), prev);
        if (!q) throw Error(ErrorCode::InvalidArgument, "Bareiss division was not exact");
        mat[i][j] = std::move(*q);
      }
      mat[i][k] = Bi{};
    }
    prev = mat[k][k];
  }
  Bi det = mat[size - 1][size - 1];
  if (negate) det = bring.scale(det, f.neg(1));
  return BivariatePoly::from_field(a.domain(), det);
}

}  // namespace

std::uint64_t scalar_resultant(const FieldContext& f, const UnivariatePoly& a, const UnivariatePoly& b, int m, int n) {
  Ring ring(f);
  if (a.is_zero() || b.is_zero()) return 0;
  const int da = a.degree(), db = b.degree();
  if (da < m && db < n) return 0;  // first column of the Sylvester matrix vanishes
  std::uint64_t r = euclid_resultant(ring, a, b);
  if (da < m) {
    // Res_{m,n} = (-1)^((m - da) n) lc(b)^(m - da) Res_{da,n}
    r = f.mul(r, f.pow(ring.lead(b), static_cast<std::uint64_t>(m - da)));
    if ((static_cast<long>(m - da) * n) % 2 == 1) r = f.neg(r);
  } else if (db < n) {
    // Res_{m,n} = lc(a)^(n - db) Res_{m,db}
    r = f.mul(r, f.pow(ring.lead(a), static_cast<std::uint64_t>(n - db)));
  }
  return r;
}

UnivariatePoly interpolate(const FieldContext& f, const std::vector<std::uint64_t>& xs,
                           const std::vector<std::uint64_t>& ys) {
  Ring ring(f);
  const std::size_t n = xs.size();
  // Newton divided differences, then expand the Newton form.
  std::vector<std::uint64_t> coef = ys;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      const std::uint64_t num = f.sub(coef[i], coef[i - 1]);
      const std::uint64_t den = f.sub(xs[i], xs[i - j]);
      coef[i] = f.mul(num, f.inv(den));
      if (i == j) break;
    }
  }
  UnivariatePoly acc;
  for (std::size_t i = n; i-- > 0;) {
    acc = ring.mul(acc, ring.from_coeffs({f.neg(xs[i]), 1}));
    acc = ring.add(acc, ring.constant(coef[i]));
  }
  return acc;
}

BivariatePoly resultant_x(const BivariatePoly& a, const BivariatePoly& b, ResultantMethod method) {
  check_inputs(a, b);
  const std::uint64_t p = a.domain().modulus();
  const auto gu = static_cast<std::uint64_t>(b.degree_x()) * static_cast<std::uint64_t>(std::max(a.degree_y(), 0));
  const auto gv = static_cast<std::uint64_t>(a.degree_x()) * static_cast<std::uint64_t>(std::max(b.degree_y(), 0));
  const bool enough_points = p > std::max(gu, gv);
  switch (method) {
    case ResultantMethod::Interpolation:
      if (!enough_points) {
        throw Error(ErrorCode::InvalidArgument, "field too small for evaluation-interpolation");
      }
      return via_interpolation(a, b);
    case ResultantMethod::Sylvester:
      return via_sylvester(a, b);
    case ResultantMethod::Auto:
      break;
  }
  return enough_points ? via_interpolation(a, b) : via_sylvester(a, b);
}

BivariatePoly shifted_resultant(const BivariatePoly& f, std::uint64_t a, ResultantMethod method) {
  return resultant_x(f, shift(f, a, 0), method);
}

}  // namespace curvecount
