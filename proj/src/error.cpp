#include "nct/error.hpp"

namespace nct {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroOrNegativeProbability: return "ZeroOrNegativeProbability";
    case ErrorCode::ProbabilitySumNotOne: return "ProbabilitySumNotOne";
    case ErrorCode::DuplicateSymbol: return "DuplicateSymbol";
    case ErrorCode::InvalidRadix: return "InvalidRadix";
    case ErrorCode::ExtensionTooLarge: return "ExtensionTooLarge";
    case ErrorCode::MissingSymbol: return "MissingSymbol";
    case ErrorCode::MissingPolicy: return "MissingPolicy";
    case ErrorCode::InvalidPolicy: return "InvalidPolicy";
    case ErrorCode::InvalidCodeword: return "InvalidCodeword";
    case ErrorCode::UnsupportedMultiCodeword: return "UnsupportedMultiCodeword";
    case ErrorCode::KraftViolated: return "KraftViolated";
    case ErrorCode::NotPrefixFree: return "NotPrefixFree";
    case ErrorCode::TreeTooSmall: return "TreeTooSmall";
    case ErrorCode::NotCompact: return "NotCompact";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::NotUniquelyDecipherable: return "NotUniquelyDecipherable";
    case ErrorCode::RadixOneUnsupported: return "RadixOneUnsupported";
    case ErrorCode::GroupLargerThanRadix: return "GroupLargerThanRadix";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace nct
