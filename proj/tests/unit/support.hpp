#ifndef CURVECOUNT_TESTS_SUPPORT_HPP
#define CURVECOUNT_TESTS_SUPPORT_HPP

#include <optional>
#include <string>

#include "curvecount/errors.hpp"
#include "curvecount/parse.hpp"
#include "doctest.h"

/// The error code thrown by fn, or nullopt when it returns normally.
template <class Fn>
std::optional<curvecount::ErrorCode> thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const curvecount::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

#define CHECK_CODE(expr, c) CHECK(thrown_code([&] { (void)(expr); }) == std::optional(curvecount::ErrorCode::c))

inline curvecount::BivariatePoly mod_poly(const std::string& text, std::uint64_t p) {
  return curvecount::parse_poly(text, curvecount::CoeffDomain::modular(p));
}

inline curvecount::BivariatePoly int_poly(const std::string& text) {
  return curvecount::parse_poly(text, curvecount::CoeffDomain::integers());
}

#endif  // CURVECOUNT_TESTS_SUPPORT_HPP
