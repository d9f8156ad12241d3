#ifndef CURVECOUNT_RESULTANT_HPP
#define CURVECOUNT_RESULTANT_HPP

#include <cstdint>
#include <vector>

#include "curvecount/poly.hpp"
#include "curvecount/upoly.hpp"

namespace curvecount {

enum class ResultantMethod { Auto, Interpolation, Sylvester };

/// Resultant of a and b read as polynomials of formal degrees m >= deg a and
/// n >= deg b: the Sylvester determinant with a's rows first. Computed by the
/// Euclidean scalar algorithm, then corrected for vanishing leading terms.
std::uint64_t scalar_resultant(const FieldContext& f, const UnivariatePoly& a, const UnivariatePoly& b, int m, int n);

/// Res_X(A(X, U), B(X, V)) as a polynomial in (U, V), stored with U in the X
/// slot and V in the Y slot. Sign convention: Sylvester matrix with A's
/// coefficient rows first, highest power of X leftmost.
///
/// Auto picks evaluation-interpolation when p exceeds both interpolation
/// degree bounds and fraction-free elimination over F_p[U, V] otherwise.
/// Throws ZeroPolynomial, DegenerateInX, DomainMismatch (integer inputs) and,
/// for a forced Interpolation on a field that is too small, InvalidArgument.
BivariatePoly resultant_x(const BivariatePoly& a, const BivariatePoly& b,
                          ResultantMethod method = ResultantMethod::Auto);

/// R_a(U, V) = Res_X(F(X, U), F(X + a, V)).
BivariatePoly shifted_resultant(const BivariatePoly& f, std::uint64_t a,
                                ResultantMethod method = ResultantMethod::Auto);

/// Interpolating polynomial through (xs[i], ys[i]); xs pairwise distinct.
UnivariatePoly interpolate(const FieldContext& f, const std::vector<std::uint64_t>& xs,
                           const std::vector<std::uint64_t>& ys);

}  // namespace curvecount

#endif  // CURVECOUNT_RESULTANT_HPP
