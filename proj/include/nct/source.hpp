#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nct/rational.hpp"

namespace nct {

/// A finite stationary memoryless source: distinct symbols with an exact
/// probability distribution. Every probability is strictly positive and
/// the probabilities sum to exactly one.
class Source {
 public:
  [[nodiscard]] std::size_t size() const noexcept { return symbols_.size(); }
  [[nodiscard]] std::span<const std::string> symbols() const noexcept { return symbols_; }
  [[nodiscard]] std::span<const Rational> probabilities() const noexcept { return probs_; }
  [[nodiscard]] const std::string& symbol(std::size_t i) const { return symbols_.at(i); }
  [[nodiscard]] const Rational& probability(std::size_t i) const { return probs_.at(i); }

  /// Index of `symbol`, or size() when absent.
  [[nodiscard]] std::size_t index_of(std::string_view symbol) const noexcept;

  friend Source make_source(std::vector<std::string> symbols, std::vector<Rational> probs);

  friend bool operator==(const Source&, const Source&) = default;

 private:
  Source() = default;
  std::vector<std::string> symbols_;
  std::vector<Rational> probs_;
};

/// Validates and builds a Source. Errors: InvalidArgument (empty or length
/// mismatch), ZeroOrNegativeProbability, ProbabilitySumNotOne, DuplicateSymbol.
Source make_source(std::vector<std::string> symbols, std::vector<Rational> probs);

/// r-ary entropy -sum p_i log_r p_i in double precision. Throws InvalidRadix
/// for r < 2.
double entropy(const Source& src, std::uint32_t radix);

/// Entropy of a bare probability list (used by the reduction identities).
double entropy(std::span<const Rational> probs, std::uint32_t radix);

inline constexpr std::size_t kDefaultExtensionCap = 1'000'000;

/// Product source S^p. Tuple symbols are rendered `(a,b,...)`; p = 1 returns
/// the source unchanged. Throws ExtensionTooLarge when n^p exceeds `cap`.
Source extend_source(const Source& src, std::uint32_t power,
                     std::size_t cap = kDefaultExtensionCap);

/// Seed for the fixed stream generator. The generator is std::mt19937_64
/// (fully specified by the C++ standard); each draw takes one raw 64-bit
/// output u and emits the first symbol i with u < floor(2^64 * (p_1+...+p_i)),
/// the last symbol absorbing the remainder.
struct StreamSeed {
  std::uint64_t seed = 0;
  static constexpr std::string_view generator_id = "mt19937_64/cdf-threshold";
};

/// Seed used by the fixed-seed convergence checks.
inline constexpr StreamSeed kReferenceSeed{1};

/// i.i.d. symbol indices drawn under the source distribution.
std::vector<std::size_t> sample_stream(const Source& src, std::size_t count, StreamSeed seed);

/// Reusable sampler over the same thresholds as sample_stream.
class SymbolSampler {
 public:
  explicit SymbolSampler(std::span<const Rational> probs);
  template <class Engine>
  std::size_t operator()(Engine& engine) const {
    const std::uint64_t u = engine();
    for (std::size_t i = 0; i + 1 < thresholds_.size(); ++i) {
      if (u < thresholds_[i]) return i;
    }
    return thresholds_.size() - 1;
  }

 private:
  std::vector<std::uint64_t> thresholds_;
};

/// Derives independent sub-seeds from a master seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

}  // namespace nct
