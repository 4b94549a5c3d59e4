#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqladder {

enum class ErrorKind {
  ParseError,
  IncompleteGrid,
  DuplicateKey,
  NonPositiveValue,
  EmptyCorpus,
  TooFewKnots,
  NonIncreasingX,
  OutOfRange,
  EmptyInput,
  MixedSequences,
  EmptyFront,
  InvalidConfig,
  NoComparableRungs,
  MethodMismatch,
  EmptyIntersection,
  InvalidSpec,
  IoError,      // reading inputs
  OutputError,  // writing results
};

std::string_view to_string(ErrorKind kind);

// Every failure in the library surfaces as an Error carrying a kind so
// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace eqladder
