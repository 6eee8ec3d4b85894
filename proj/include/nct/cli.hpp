#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nct {

enum class OutputMode { Human, Machine };

/// Exit statuses of every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitInputError = 2;

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;  // positional paths (source, then code)
  std::optional<std::uint32_t> radix;
  std::uint64_t seed = 1;
  std::size_t trials = 10'000;
  std::size_t stream_length = 100'000;
  double tolerance = 1e-9;
  std::size_t max_len = 12;
  std::string lengths;  // comma list for kraft / build-code
  std::string probs;    // comma list for check-ineq
  std::string chooser = "policy";  // simulate: policy | first | longest
  OutputMode mode = OutputMode::Human;
};

/// Throws Error{InvalidArgument} when tolerance <= 0 or trials == 0.
void validate(const RunConfig& cfg);

/// Runs one subcommand: entropy, acl, kraft, check-ud, check-prefix,
/// build-code, huffman, certify, simulate, fuzz, check-ineq. Returns 0 when
/// the computation succeeds or the checked property holds, 1 when a checked
/// property is violated, 2 on input errors (reported on `err`).
int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace nct
