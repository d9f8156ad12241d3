#ifndef CURVECOUNT_LIFT_HPP
#define CURVECOUNT_LIFT_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "curvecount/poly.hpp"

namespace curvecount {

struct IntPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool operator==(const IntPoint&) const = default;
};

/// Integer polynomial whose reduction is proportional to a polynomial mod p,
/// built from Cramer determinants over small solutions.
struct LiftedPoly {
  /// sum over D \ {pivot} of u(i,j) X^i Y^j  +  v X^k Y^l, integer domain.
  BivariatePoly lifted;
  Exponent pivot;
  BigInt v;
  /// Indexed by the divisor-closed exponent set D minus the pivot.
  std::map<Exponent, BigInt> u;
  std::uint64_t p = 0;
  std::vector<IntPoint> points;
};

/// Exponents (k, l) dominated by some support point of f; sorted ascending.
/// Its size is delta(f).
std::vector<Exponent> divisor_closure(const BivariatePoly& f);

/// Builds the lift from the first delta(f) - 1 solutions. Columns of V run
/// over the divisor closure minus the pivot (ascending exponent order), rows
/// over the solutions, entries x^m y^n over the integers. v = det V, and
/// u(i,j) = det of V with column (i,j) replaced by (-x^k y^l).
///
/// Throws NotASolution if some point is not a zero of f mod p, SingularSystem
/// when det V = 0, InvalidArgument on too few points or a pivot outside the
/// support.
LiftedPoly lift_construction(const BivariatePoly& f, Exponent pivot, std::span<const IntPoint> solutions);

/// v * F(i,j) == u(i,j) * F(pivot) (mod p) for every (i, j) in the closure.
bool lift_congruences_hold(const LiftedPoly& lift, const BivariatePoly& f);

/// Exact test of |value| <= delta! * (2 d H / sqrt(N))^(d (delta - 1)),
/// done on squares so no rounding enters.
bool lift_height_bound_holds(const BigInt& value, std::size_t delta, unsigned d, std::uint64_t h, std::uint64_t n);

/// sum |u(i,j)| H^(i+j) + |v| H^(k+l): p times the bound on the quotient t in
/// lifted(x, y) = p t for |x|, |y| <= H.
BigInt lift_quotient_numerator(const LiftedPoly& lift, std::uint64_t h);

/// Fraction-free (Bareiss) determinant over the integers.
BigInt integer_determinant(std::vector<std::vector<BigInt>> m);

}  // namespace curvecount

#endif  // CURVECOUNT_LIFT_HPP
