#include "nct/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "nct/error.hpp"

namespace nct {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto at = text.find(sep, start);
    out.push_back(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

struct Line {
  std::size_t number;
  std::vector<std::string_view> fields;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  for (auto raw : split(text, '\n')) {
    ++number;
    auto f = fields(raw);
    if (f.empty() || f.front().front() == '#') continue;
    out.push_back({number, std::move(f)});
  }
  return out;
}

std::string where(std::string_view origin, std::size_t line) {
  return std::string(origin) + ":" + std::to_string(line) + ": ";
}

[[noreturn]] void fail(ErrorCode code, std::string_view origin, std::size_t line, const std::string& msg) {
  throw Error(code, where(origin, line) + msg);
}

// Re-raises a library error with a location prefix.
template <class F>
auto located(std::string_view origin, std::size_t line, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    fail(e.code(), origin, line, e.detail());
  }
}

}  // namespace

Source parse_source(std::string_view text, std::string_view origin) {
  std::vector<std::string> symbols;
  std::vector<Rational> probs;
  std::size_t last = 0;
  for (const auto& line : content_lines(text)) {
    if (line.fields.size() != 2) {
      fail(ErrorCode::ParseError, origin, line.number, "expected `<symbol> <probability>`");
    }
    symbols.emplace_back(line.fields[0]);
    probs.push_back(located(origin, line.number, [&] { return parse_rational(line.fields[1]); }));
    last = line.number;
  }
  if (symbols.empty()) fail(ErrorCode::ParseError, origin, 1, "no symbols");
  return located(origin, last, [&] { return make_source(std::move(symbols), std::move(probs)); });
}

ParsedCode parse_code(std::string_view text, std::string_view origin) {
  const auto lines = content_lines(text);
  if (lines.empty()) fail(ErrorCode::ParseError, origin, 1, "missing `radix <r>` header");
  const auto& header = lines.front();
  if (header.fields.size() != 2 || header.fields[0] != "radix") {
    fail(ErrorCode::ParseError, origin, header.number, "expected `radix <r>`");
  }
  std::uint32_t radix = 0;
  {
    auto r = header.fields[1];
    auto [ptr, ec] = std::from_chars(r.data(), r.data() + r.size(), radix);
    if (ec != std::errc{} || ptr != r.data() + r.size() || radix < 1 || radix > kMaxRadix) {
      fail(ErrorCode::ParseError, origin, header.number, "radix must be an integer in [1, 36]");
    }
  }

  std::vector<CodeEntry> entries;
  std::vector<std::vector<Rational>> weights;
  bool any_weights = false;
  bool has_lambda = false;
  std::size_t lambda_line = 0;
  std::size_t last = header.number;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    const auto& f = line.fields;
    last = line.number;
    if (!(f.size() == 2 || (f.size() == 4 && f[2] == "@"))) {
      fail(ErrorCode::ParseError, origin, line.number,
           "expected `<symbol> <codeword>[,<codeword>...] [@ q1,q2,...]`");
    }
    CodeEntry entry{std::string(f[0]), {}};
    for (auto word : split(f[1], ',')) {
      auto cw = [&] {
        try {
          return Codeword::parse(word, radix);
        } catch (const Error& e) {
          fail(ErrorCode::ParseError, origin, line.number, e.detail());
        }
      }();
      if (cw.empty()) {
        has_lambda = true;
        lambda_line = line.number;
      }
      entry.codewords.push_back(std::move(cw));
    }
    std::vector<Rational> q;
    if (f.size() == 4) {
      any_weights = true;
      for (auto w : split(f[3], ',')) q.push_back(located(origin, line.number, [&] { return parse_rational(w); }));
      if (q.size() != entry.codewords.size()) {
        fail(ErrorCode::ParseError, origin, line.number, "weight count differs from codeword count");
      }
    }
    entries.push_back(std::move(entry));
    weights.push_back(std::move(q));
  }
  if (entries.empty()) fail(ErrorCode::ParseError, origin, header.number, "code has no symbols");

  ParsedCode out{located(origin, last, [&] { return make_code(radix, std::move(entries)); }), std::nullopt};
  if (has_lambda && out.code.codeword_count() != 1) {
    fail(ErrorCode::InvariantViolation, origin, lambda_line,
         "the empty codeword is only allowed as the single codeword of a code");
  }
  if (any_weights) {
    EncodingPolicy policy{std::move(weights)};
    located(origin, last, [&] {
      validate_policy(out.code, policy);
      return 0;
    });
    out.policy = std::move(policy);
  }
  return out;
}

std::string write_source(const Source& src) {
  std::string out;
  for (std::size_t i = 0; i < src.size(); ++i) {
    out += src.symbol(i) + " " + to_fraction_string(src.probability(i)) + "\n";
  }
  return out;
}

std::string write_code(const Code& code, const std::optional<EncodingPolicy>& policy) {
  std::string out = "radix " + std::to_string(code.radix()) + "\n";
  for (std::size_t i = 0; i < code.size(); ++i) {
    const auto& e = code.entry(i);
    out += e.symbol + " ";
    for (std::size_t u = 0; u < e.codewords.size(); ++u) {
      if (u) out += ',';
      out += e.codewords[u].str();
    }
    if (policy && i < policy->weights.size() && !policy->weights[i].empty()) {
      out += " @ ";
      for (std::size_t u = 0; u < policy->weights[i].size(); ++u) {
        if (u) out += ',';
        out += to_fraction_string(policy->weights[i][u]);
      }
    }
    out += '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Inputs parse_inputs(const std::filesystem::path& source_path, const std::filesystem::path& code_path) {
  Source src = parse_source(read_file(source_path), source_path.string());
  ParsedCode code = parse_code(read_file(code_path), code_path.string());
  return {std::move(src), std::move(code)};
}

std::vector<std::size_t> parse_length_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (auto item : split(text, ',')) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw Error(ErrorCode::ParseError, "not a length: '" + std::string(item) + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  for (auto item : split(text, ',')) out.push_back(parse_rational(item));
  return out;
}

}  // namespace nct
