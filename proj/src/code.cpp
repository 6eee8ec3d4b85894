#include "nct/code.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <set>
#include <unordered_set>

#include "nct/error.hpp"

namespace nct {

namespace {

char digit_char(std::uint8_t d) {
  return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10));
}

int char_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

std::vector<std::size_t> resolve_entries(const Source& src, const Code& code) {
  std::vector<std::size_t> out;
  out.reserve(src.size());
  for (const auto& s : src.symbols()) {
    const CodeEntry* e = code.find(s);
    if (!e) throw Error(ErrorCode::MissingSymbol, "code has no codeword for '" + s + "'");
    out.push_back(static_cast<std::size_t>(e - code.entries().data()));
  }
  return out;
}

}  // namespace

bool Codeword::is_prefix_of(const Codeword& other) const noexcept {
  return digits.size() <= other.digits.size() &&
         std::equal(digits.begin(), digits.end(), other.digits.begin());
}

std::string Codeword::str() const {
  if (digits.empty()) return "-";
  std::string s;
  s.reserve(digits.size());
  for (auto d : digits) s.push_back(digit_char(d));
  return s;
}

Codeword Codeword::parse(std::string_view text, std::uint32_t radix) {
  Codeword w;
  if (text == "-") return w;
  if (text.empty()) throw Error(ErrorCode::InvalidCodeword, "empty codeword text (use '-' for lambda)");
  for (char c : text) {
    const int d = char_digit(c);
    if (d < 0 || static_cast<std::uint32_t>(d) >= radix) {
      throw Error(ErrorCode::InvalidCodeword, "digit '" + std::string(1, c) + "' in '" +
                                                  std::string(text) + "' is not below radix " +
                                                  std::to_string(radix));
    }
    w.digits.push_back(static_cast<std::uint8_t>(d));
  }
  return w;
}

std::size_t Code::codeword_count() const noexcept {
  std::size_t m = 0;
  for (const auto& e : entries_) m += e.codewords.size();
  return m;
}

bool Code::is_single_valued() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const CodeEntry& e) { return e.codewords.size() == 1; });
}

const CodeEntry* Code::find(std::string_view symbol) const noexcept {
  for (const auto& e : entries_) {
    if (e.symbol == symbol) return &e;
  }
  return nullptr;
}

std::vector<Codeword> Code::pooled() const {
  std::vector<Codeword> out;
  out.reserve(codeword_count());
  for (const auto& e : entries_) out.insert(out.end(), e.codewords.begin(), e.codewords.end());
  return out;
}

std::vector<std::size_t> Code::lengths() const {
  if (!is_single_valued()) {
    throw Error(ErrorCode::UnsupportedMultiCodeword, "lengths() needs one codeword per symbol");
  }
  std::vector<std::size_t> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.codewords.front().length());
  return out;
}

Code make_code(std::uint32_t radix, std::vector<CodeEntry> entries) {
  if (radix < 1 || radix > kMaxRadix) {
    throw Error(ErrorCode::InvalidRadix, "radix must lie in [1, 36], got " + std::to_string(radix));
  }
  if (entries.empty()) throw Error(ErrorCode::InvalidArgument, "code has no symbols");
  std::unordered_set<std::string> seen;
  for (const auto& e : entries) {
    if (!seen.insert(e.symbol).second) {
      throw Error(ErrorCode::DuplicateSymbol, "symbol '" + e.symbol + "' repeated in code");
    }
    if (e.codewords.empty()) {
      throw Error(ErrorCode::InvalidArgument, "symbol '" + e.symbol + "' has no codeword");
    }
    std::set<Codeword> distinct;
    for (const auto& w : e.codewords) {
      for (auto d : w.digits) {
        if (d >= radix) {
          throw Error(ErrorCode::InvalidCodeword, "digit of " + w.str() + " is not below radix");
        }
      }
      if (!distinct.insert(w).second) {
        throw Error(ErrorCode::InvalidCodeword, "codeword " + w.str() + " repeated for '" + e.symbol + "'");
      }
    }
  }
  Code code;
  code.radix_ = radix;
  code.entries_ = std::move(entries);
  return code;
}

Code make_code(std::uint32_t radix, std::span<const std::string> symbols,
               std::span<const std::string> codewords) {
  if (symbols.size() != codewords.size()) {
    throw Error(ErrorCode::InvalidArgument, "symbol and codeword lists differ in length");
  }
  if (radix < 1 || radix > kMaxRadix) {
    throw Error(ErrorCode::InvalidRadix, "radix must lie in [1, 36], got " + std::to_string(radix));
  }
  std::vector<CodeEntry> entries;
  entries.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    entries.push_back({symbols[i], {Codeword::parse(codewords[i], radix)}});
  }
  return make_code(radix, std::move(entries));
}

void validate_policy(const Code& code, const EncodingPolicy& policy) {
  if (policy.weights.size() != code.size()) {
    throw Error(ErrorCode::InvalidPolicy, "policy does not cover every code entry");
  }
  for (std::size_t i = 0; i < code.size(); ++i) {
    const auto& q = policy.weights[i];
    if (q.empty()) continue;
    const auto& e = code.entry(i);
    if (q.size() != e.codewords.size()) {
      throw Error(ErrorCode::InvalidPolicy, "weights for '" + e.symbol + "' do not match card f");
    }
    Rational total = 0;
    for (const auto& w : q) {
      if (sgn(w) <= 0) throw Error(ErrorCode::InvalidPolicy, "non-positive weight for '" + e.symbol + "'");
      total += w;
    }
    if (total != 1) throw Error(ErrorCode::InvalidPolicy, "weights for '" + e.symbol + "' do not sum to 1");
  }
}

bool is_non_singular(const Code& code) {
  std::set<Codeword> owner_seen;
  for (const auto& e : code.entries()) {
    for (const auto& w : e.codewords) {
      if (!owner_seen.insert(w).second) return false;
    }
  }
  return true;
}

Rational kraft_sum(std::span<const std::size_t> lengths, std::uint32_t radix) {
  if (radix < 2) throw Error(ErrorCode::InvalidRadix, "kraft sum needs radix >= 2");
  Rational total = 0;
  for (auto l : lengths) total += inverse_power(radix, l);
  return total;
}

Rational acl_exact(const Source& src, const Code& code, const std::optional<EncodingPolicy>& policy) {
  if (policy) validate_policy(code, *policy);
  const auto index = resolve_entries(src, code);
  Rational total = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const auto& e = code.entry(index[i]);
    if (e.codewords.size() == 1) {
      total += src.probability(i) * static_cast<unsigned long>(e.codewords.front().length());
      continue;
    }
    if (!policy || policy->weights[index[i]].empty()) {
      throw Error(ErrorCode::MissingPolicy, "'" + e.symbol + "' has several codewords but no weights");
    }
    Rational inner = 0;
    const auto& q = policy->weights[index[i]];
    for (std::size_t u = 0; u < q.size(); ++u) {
      inner += q[u] * static_cast<unsigned long>(e.codewords[u].length());
    }
    total += src.probability(i) * inner;
  }
  return total;
}

double acl(const Source& src, const Code& code, const std::optional<EncodingPolicy>& policy) {
  return to_double(acl_exact(src, code, policy));
}

Code minimal_reduction(const Code& code) {
  std::vector<CodeEntry> entries;
  entries.reserve(code.size());
  for (const auto& e : code.entries()) {
    const auto best = std::min_element(e.codewords.begin(), e.codewords.end(),
                                       [](const Codeword& a, const Codeword& b) {
                                         if (a.length() != b.length()) return a.length() < b.length();
                                         return a < b;
                                       });
    entries.push_back({e.symbol, {*best}});
  }
  return make_code(code.radix(), std::move(entries));
}

Chooser policy_chooser(const Code& code, const EncodingPolicy& policy, std::uint64_t seed) {
  validate_policy(code, policy);
  struct State {
    std::vector<SymbolSampler> samplers;
    std::vector<bool> present;
    std::mt19937_64 engine;
  };
  auto state = std::make_shared<State>();
  state->engine.seed(seed);
  for (const auto& q : policy.weights) {
    state->present.push_back(!q.empty());
    if (q.empty()) {
      Rational one = 1;
      state->samplers.emplace_back(std::span<const Rational>(&one, 1));
    } else {
      state->samplers.emplace_back(q);
    }
  }
  // Entry order of the code; the chooser receives the code-entry index.
  return [state](std::size_t entry, std::span<const Codeword> options, std::uint64_t) -> std::size_t {
    if (options.size() == 1) return 0;
    if (entry >= state->samplers.size() || !state->present[entry]) {
      throw Error(ErrorCode::MissingPolicy, "no weights for a multi-codeword symbol");
    }
    return state->samplers[entry](state->engine);
  };
}

Chooser first_chooser() {
  return [](std::size_t, std::span<const Codeword>, std::uint64_t) -> std::size_t { return 0; };
}

Chooser longest_chooser() {
  return [](std::size_t, std::span<const Codeword> options, std::uint64_t) -> std::size_t {
    std::size_t best = 0;
    for (std::size_t u = 1; u < options.size(); ++u) {
      if (options[u].length() > options[best].length()) best = u;
    }
    return best;
  };
}

double SimulationTrace::acl_at(std::size_t t) const {
  return static_cast<double>(digits.at(t - 1)) / static_cast<double>(t);
}

double SimulationTrace::reduced_acl_at(std::size_t t) const {
  return static_cast<double>(reduced_digits.at(t - 1)) / static_cast<double>(t);
}

std::vector<std::size_t> SimulationTrace::frequencies_at(std::size_t t) const {
  std::vector<std::size_t> f(frequencies.size(), 0);
  for (std::size_t z = 0; z < t && z < events.size(); ++z) ++f[events[z].symbol];
  return f;
}

std::size_t SimulationTrace::pathwise_violations() const noexcept {
  std::size_t bad = 0;
  for (std::size_t z = 0; z < digits.size(); ++z) {
    if (digits[z] < reduced_digits[z]) ++bad;
  }
  return bad;
}

SimulationTrace empirical_acl(const Source& src, const Code& code, const Chooser& chooser,
                              std::size_t t, StreamSeed seed) {
  if (t == 0) throw Error(ErrorCode::InvalidArgument, "simulation needs t >= 1");
  const auto index = resolve_entries(src, code);
  const Code reduced = minimal_reduction(code);
  const auto stream = sample_stream(src, t, seed);

  SimulationTrace trace;
  trace.radix = code.radix();
  trace.events.reserve(t);
  trace.digits.reserve(t);
  trace.reduced_digits.reserve(t);
  trace.frequencies.assign(src.size(), 0);

  std::uint64_t digits = 0;
  std::uint64_t reduced_digits = 0;
  for (std::size_t z = 0; z < t; ++z) {
    const std::size_t i = stream[z];
    const auto& options = code.entry(index[i]).codewords;
    const std::size_t u = chooser(index[i], options, z);
    if (u >= options.size()) throw Error(ErrorCode::InvalidArgument, "chooser returned an invalid index");
    digits += options[u].length();
    reduced_digits += reduced.entry(index[i]).codewords.front().length();
    trace.events.push_back({i, u});
    trace.digits.push_back(digits);
    trace.reduced_digits.push_back(reduced_digits);
    ++trace.frequencies[i];
  }
  return trace;
}

}  // namespace nct
