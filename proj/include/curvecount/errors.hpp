#ifndef CURVECOUNT_ERRORS_HPP
#define CURVECOUNT_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace curvecount {

enum class ErrorCode {
  CompositeModulus,
  ModulusOutOfRange,
  ZeroElement,
  NotADivisor,
  NotInvertible,
  NotIrreducible,
  ExtensionTooLarge,
  ParseError,
  ZeroPolynomial,
  DomainMismatch,
  DegenerateInX,
  SingularSystem,
  NotASolution,
  DegreeTooLarge,
  ModulusTooLarge,
  BudgetExceeded,
  InvalidArgument,
  NotCoprime,
  DegreeCapExceeded,
  PowerFormExcluded,
  NoCompletePath,
  InsufficientPoints,
  HypothesisFailed,
  IoError,
};

std::string_view to_string(ErrorCode code);

// All domain failures surface as this type; the code is what callers switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::string expected)
      : Error(ErrorCode::ParseError,
              "at offset " + std::to_string(offset) + ", expected " + expected),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

// Soft failure from the point counter: carries what was finished before the deadline.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t partial_count, std::uint64_t rows_done)
      : Error(ErrorCode::BudgetExceeded, what), partial_count_(partial_count), rows_done_(rows_done) {}

  std::uint64_t partial_count() const noexcept { return partial_count_; }
  std::uint64_t rows_done() const noexcept { return rows_done_; }

 private:
  std::uint64_t partial_count_;
  std::uint64_t rows_done_;
};

}  // namespace curvecount

#endif  // CURVECOUNT_ERRORS_HPP
