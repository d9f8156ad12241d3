#include "curvecount/lift.hpp"

#include <algorithm>
#include <set>

namespace curvecount {

std::vector<Exponent> divisor_closure(const BivariatePoly& f) {
  std::set<Exponent> closure;
  for (const auto& [e, c] : f.terms()) {
    for (unsigned k = 0; k <= e.x; ++k) {
      for (unsigned l = 0; l <= e.y; ++l) closure.insert(Exponent{k, l});
    }
  }
  return {closure.begin(), closure.end()};
}

BigInt integer_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  bool negate = false;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return negate ? BigInt(-m[n - 1][n - 1]) : m[n - 1][n - 1];
}

namespace {

BigInt power(const BigInt& base, unsigned e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

BigInt monomial_value(const IntPoint& pt, Exponent e) {
  return power(BigInt(static_cast<long>(pt.x)), e.x) * power(BigInt(static_cast<long>(pt.y)), e.y);
}

}  // namespace

LiftedPoly lift_construction(const BivariatePoly& f, Exponent pivot, std::span<const IntPoint> solutions) {
  if (!f.domain().is_modular()) throw Error(ErrorCode::DomainMismatch, "lift_construction needs a polynomial mod p");
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "lift of zero polynomial");
  if (f.coefficient(pivot) == 0) throw Error(ErrorCode::InvalidArgument, "pivot is not in the support");
  const FieldContext& field = f.domain().field();
  const std::vector<Exponent> closure = divisor_closure(f);
  const std::size_t rank = closure.size() - 1;
  if (solutions.size() < rank) {
    throw Error(ErrorCode::InvalidArgument, "need " + std::to_string(rank) + " solutions, got " +
                                                std::to_string(solutions.size()));
  }
  for (const IntPoint& pt : solutions) {
    if (f.eval_mod(field.from_int(pt.x), field.from_int(pt.y)) != 0) {
      throw Error(ErrorCode::NotASolution,
                  "(" + std::to_string(pt.x) + ", " + std::to_string(pt.y) + ") is not a zero mod p");
    }
  }

  std::vector<Exponent> columns;
  std::copy_if(closure.begin(), closure.end(), std::back_inserter(columns), [&](Exponent e) { return e != pivot; });

  std::vector<std::vector<BigInt>> mat(rank, std::vector<BigInt>(rank));
  std::vector<BigInt> rhs(rank);
  for (std::size_t r = 0; r < rank; ++r) {
    for (std::size_t c = 0; c < rank; ++c) mat[r][c] = monomial_value(solutions[r], columns[c]);
    rhs[r] = -monomial_value(solutions[r], pivot);
  }

  LiftedPoly out{BivariatePoly(CoeffDomain::integers()), pivot, integer_determinant(mat), {}, field.modulus(),
                 std::vector<IntPoint>(solutions.begin(), solutions.begin() + static_cast<std::ptrdiff_t>(rank))};
  if (out.v == 0) throw Error(ErrorCode::SingularSystem, "det V = 0; resample the solutions");

  BivariatePoly::TermMap terms;
  terms.emplace(pivot, out.v);
  for (std::size_t c = 0; c < rank; ++c) {
    auto replaced = mat;
    for (std::size_t r = 0; r < rank; ++r) replaced[r][c] = rhs[r];
    BigInt det = integer_determinant(std::move(replaced));
    out.u.emplace(columns[c], det);
    terms.emplace(columns[c], std::move(det));
  }
  out.lifted = BivariatePoly(CoeffDomain::integers(), std::move(terms));
  return out;
}

bool lift_congruences_hold(const LiftedPoly& lift, const BivariatePoly& f) {
  const BigInt p(static_cast<unsigned long>(lift.p));
  const BigInt pivot_coeff = f.coefficient(lift.pivot);
  for (const auto& [e, u] : lift.u) {
    const BigInt diff = lift.v * f.coefficient(e) - u * pivot_coeff;
    if (diff % p != 0) return false;
  }
  // Support points of f outside the closure cannot exist, but check anyway.
  return std::all_of(f.terms().begin(), f.terms().end(),
                     [&](const auto& kv) { return kv.first == lift.pivot || lift.u.contains(kv.first); });
}

bool lift_height_bound_holds(const BigInt& value, std::size_t delta, unsigned d, std::uint64_t h, std::uint64_t n) {
  if (n == 0) return false;
  const auto e = static_cast<unsigned>(d * (delta - 1));
  BigInt fact = 1;
  for (std::size_t i = 2; i <= delta; ++i) fact *= static_cast<unsigned long>(i);
  // value^2 * N^e <= (delta!)^2 * (2 d H)^(2e)
  const BigInt lhs = value * value * power(BigInt(static_cast<unsigned long>(n)), e);
  const BigInt rhs = fact * fact * power(BigInt(static_cast<unsigned long>(2 * d)) * static_cast<unsigned long>(h), 2 * e);
  return lhs <= rhs;
}

BigInt lift_quotient_numerator(const LiftedPoly& lift, std::uint64_t h) {
  const BigInt hb(static_cast<unsigned long>(h));
  BigInt total = abs(lift.v) * power(hb, lift.pivot.x + lift.pivot.y);
  for (const auto& [e, u] : lift.u) total += abs(u) * power(hb, e.x + e.y);
  return total;
}

}  // namespace curvecount
