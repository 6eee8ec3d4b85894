#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nct/code.hpp"
#include "nct/source.hpp"

namespace nct {

/// Source text: one `<symbol> <probability>` per line, probabilities as `a/b`
/// or finite decimals, `#` lines are comments. Errors carry `origin:line:`.
Source parse_source(std::string_view text, std::string_view origin = "<source>");

struct ParsedCode {
  Code code;
  std::optional<EncodingPolicy> policy;  // present when any line has `@`
};

/// Code text: `radix <r>`, then `<symbol> <cw>[,<cw>...] [@ q1,q2,...]` per
/// line, `-` for the empty word. The empty word is only accepted as the sole
/// codeword of the code.
ParsedCode parse_code(std::string_view text, std::string_view origin = "<code>");

std::string write_source(const Source& src);
std::string write_code(const Code& code, const std::optional<EncodingPolicy>& policy = std::nullopt);

std::string read_file(const std::filesystem::path& path);

struct Inputs {
  Source source;
  ParsedCode code;
};

Inputs parse_inputs(const std::filesystem::path& source_path, const std::filesystem::path& code_path);

/// Comma-separated lists, used by the CLI.
std::vector<std::size_t> parse_length_list(std::string_view text);
std::vector<Rational> parse_rational_list(std::string_view text);

}  // namespace nct
