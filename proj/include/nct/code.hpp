#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nct/rational.hpp"
#include "nct/source.hpp"

namespace nct {

/// Largest radix with a single-character digit rendering (0-9, a-z).
inline constexpr std::uint32_t kMaxRadix = 36;

/// A word over {0..r-1}. The empty word (lambda) has no digits.
struct Codeword {
  std::vector<std::uint8_t> digits;

  [[nodiscard]] std::size_t length() const noexcept { return digits.size(); }
  [[nodiscard]] bool empty() const noexcept { return digits.empty(); }
  [[nodiscard]] bool is_prefix_of(const Codeword& other) const noexcept;

  /// Digit string, or "-" for lambda.
  [[nodiscard]] std::string str() const;
  /// Inverse of str(). Throws InvalidCodeword when a digit is >= radix.
  static Codeword parse(std::string_view text, std::uint32_t radix);

  friend auto operator<=>(const Codeword&, const Codeword&) = default;
  friend bool operator==(const Codeword&, const Codeword&) = default;
};

struct CodeEntry {
  std::string symbol;
  std::vector<Codeword> codewords;  // f(symbol), nonempty, no repeats

  friend bool operator==(const CodeEntry&, const CodeEntry&) = default;
};

/// An r-ary code: each symbol maps to a nonempty set of candidate codewords.
/// Non-singularity and decipherability are predicates, not invariants.
class Code {
 public:
  [[nodiscard]] std::uint32_t radix() const noexcept { return radix_; }
  [[nodiscard]] std::span<const CodeEntry> entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] const CodeEntry& entry(std::size_t i) const { return entries_.at(i); }
  /// m: codewords counted across all symbols.
  [[nodiscard]] std::size_t codeword_count() const noexcept;
  [[nodiscard]] bool is_single_valued() const noexcept;
  [[nodiscard]] const CodeEntry* find(std::string_view symbol) const noexcept;

  /// Every codeword, in entry order.
  [[nodiscard]] std::vector<Codeword> pooled() const;
  /// Lengths l_i of a single-valued code, in entry order.
  [[nodiscard]] std::vector<std::size_t> lengths() const;

  friend Code make_code(std::uint32_t radix, std::vector<CodeEntry> entries);
  friend bool operator==(const Code&, const Code&) = default;

 private:
  Code() = default;
  std::uint32_t radix_ = 2;
  std::vector<CodeEntry> entries_;
};

/// Validates radix in [1, 36], distinct symbols, nonempty codeword sets with
/// no repeated codeword, and every digit < radix.
Code make_code(std::uint32_t radix, std::vector<CodeEntry> entries);

/// Convenience for single-valued codes: symbols paired with codeword strings.
Code make_code(std::uint32_t radix, std::span<const std::string> symbols,
               std::span<const std::string> codewords);

/// Per-entry encoding weights q_{i,u}. An empty list means "not given";
/// a non-empty list sums to exactly one with every weight positive.
struct EncodingPolicy {
  std::vector<std::vector<Rational>> weights;
};

/// Throws InvalidPolicy when the policy does not fit the code.
void validate_policy(const Code& code, const EncodingPolicy& policy);

/// f(s_i) ∩ f(s_j) = ∅ for every i != j.
bool is_non_singular(const Code& code);

/// Exact sum of r^(-l) over the lengths. Throws InvalidRadix for r < 2.
Rational kraft_sum(std::span<const std::size_t> lengths, std::uint32_t radix);

/// Average codeword length, exact. Symbols with more than one codeword are
/// weighted by the policy. Errors: MissingSymbol, MissingPolicy.
Rational acl_exact(const Source& src, const Code& code,
                   const std::optional<EncodingPolicy>& policy = std::nullopt);
double acl(const Source& src, const Code& code,
           const std::optional<EncodingPolicy>& policy = std::nullopt);

/// g(s_i) = the shortest codeword of f(s_i); ties go to the lexicographically
/// least digit sequence.
Code minimal_reduction(const Code& code);

/// Chooses u in f(s_i) for the step-th emitted symbol; `entry` indexes the code.
using Chooser =
    std::function<std::size_t(std::size_t entry, std::span<const Codeword> options,
                              std::uint64_t step)>;

/// Samples u with probability q_{i,u}; draws come from a generator seeded
/// independently of the symbol stream.
Chooser policy_chooser(const Code& code, const EncodingPolicy& policy, std::uint64_t seed);
/// Always the first codeword of each set.
Chooser first_chooser();
/// Always a longest codeword (earliest among ties).
Chooser longest_chooser();

/// One run of encoding t source symbols.
struct SimulationTrace {
  struct Event {
    std::size_t symbol;  // index into the source
    std::size_t choice;  // index into f(symbol) of the code's entry
  };
  std::uint32_t radix = 2;
  std::vector<Event> events;               // k_{i,u,z} as (i, u) per step z
  std::vector<std::uint64_t> digits;       // cumulative digits emitted after step z
  std::vector<std::uint64_t> reduced_digits;  // same stream under minimal_reduction(code)
  std::vector<std::size_t> frequencies;    // f_{i,t} at the final t

  [[nodiscard]] std::size_t steps() const noexcept { return events.size(); }
  /// ACL_{r,t} for 1 <= t <= steps().
  [[nodiscard]] double acl_at(std::size_t t) const;
  [[nodiscard]] double reduced_acl_at(std::size_t t) const;
  /// f_{i,t} for 0 <= t <= steps().
  [[nodiscard]] std::vector<std::size_t> frequencies_at(std::size_t t) const;
  /// Steps where ACL_{r,t}(C) < ACL_{r,t}(C'); zero by construction.
  [[nodiscard]] std::size_t pathwise_violations() const noexcept;
};

/// Simulates encoding `t` symbols drawn with sample_stream(src, t, seed).
/// Errors: MissingSymbol; InvalidArgument for t = 0 or a chooser returning an
/// out-of-range index.
SimulationTrace empirical_acl(const Source& src, const Code& code, const Chooser& chooser,
                              std::size_t t, StreamSeed seed);

}  // namespace nct
