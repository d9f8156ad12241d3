#ifndef CURVECOUNT_PARSE_HPP
#define CURVECOUNT_PARSE_HPP

#include <string_view>

#include "curvecount/poly.hpp"

namespace curvecount {

/// Largest exponent accepted after '^'.
inline constexpr unsigned kMaxParsedExponent = 4096;

/// Parses the polynomial grammar
///
///   expr   := term (('+' | '-') term)*
///   term   := ['-'] factor ('*' factor)*
///   factor := base ('^' uint)?
///   base   := int | 'X' | 'Y' | '(' expr ')'
///
/// Whitespace is insignificant. Coefficients are reduced into the domain.
/// Throws ParseError with the byte offset and the set of tokens that would
/// have been accepted there.
BivariatePoly parse_poly(std::string_view text, const CoeffDomain& domain);

}  // namespace curvecount

#endif  // CURVECOUNT_PARSE_HPP
