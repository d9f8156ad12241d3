#include "curvecount/parse.hpp"

#include <cctype>
#include <string>

namespace curvecount {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const CoeffDomain& domain) : text_(text), domain_(domain) {}

  BivariatePoly parse() {
    BivariatePoly result = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "'+', '-', '*', '^' or end of input");
    return result;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BivariatePoly expr() {
    BivariatePoly acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  BivariatePoly term() {
    const bool negate = accept('-');
    BivariatePoly acc = factor();
    while (accept('*')) acc = acc * factor();
    return negate ? -acc : acc;
  }

  BivariatePoly factor() {
    BivariatePoly b = base();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      const std::string digits = read_digits();
      if (digits.empty()) throw ParseError(start, "unsigned integer exponent");
      if (digits.size() > 6 || std::stoul(digits) > kMaxParsedExponent) {
        throw ParseError(start, "exponent <= " + std::to_string(kMaxParsedExponent));
      }
      b = b.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return b;
  }

  BivariatePoly base() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "integer, 'X', 'Y' or '('");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return BivariatePoly::constant(domain_, BigInt(read_digits()));
    }
    if (c == 'X' || c == 'Y') {
      ++pos_;
      return BivariatePoly::monomial(domain_, 1, c == 'X' ? 1 : 0, c == 'Y' ? 1 : 0);
    }
    if (c == '(') {
      ++pos_;
      BivariatePoly inner = expr();
      skip_ws();
      if (!accept(')')) throw ParseError(pos_, "')', '+', '-', '*' or '^'");
      return inner;
    }
    throw ParseError(pos_, "integer, 'X', 'Y' or '('");
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  const CoeffDomain& domain_;
  std::size_t pos_ = 0;
};

}  // namespace

BivariatePoly parse_poly(std::string_view text, const CoeffDomain& domain) { return Parser(text, domain).parse(); }

}  // namespace curvecount
