#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nct {

enum class ErrorCode {
  ZeroOrNegativeProbability,
  ProbabilitySumNotOne,
  DuplicateSymbol,
  InvalidRadix,
  ExtensionTooLarge,
  MissingSymbol,
  MissingPolicy,
  InvalidPolicy,
  InvalidCodeword,
  UnsupportedMultiCodeword,
  KraftViolated,
  NotPrefixFree,
  TreeTooSmall,
  NotCompact,
  InvalidGroup,
  NotUniquelyDecipherable,
  RadixOneUnsupported,
  GroupLargerThanRadix,
  ParseError,
  InvariantViolation,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure surfaced by the library is an nct::Error carrying a code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace nct
