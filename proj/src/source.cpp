#include "nct/source.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "nct/error.hpp"

namespace nct {

std::size_t Source::index_of(std::string_view symbol) const noexcept {
  auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  return static_cast<std::size_t>(it - symbols_.begin());
}

Source make_source(std::vector<std::string> symbols, std::vector<Rational> probs) {
  if (symbols.empty()) throw Error(ErrorCode::InvalidArgument, "source has no symbols");
  if (symbols.size() != probs.size()) {
    throw Error(ErrorCode::InvalidArgument, "symbol and probability lists differ in length");
  }
  std::unordered_set<std::string> seen;
  Rational total = 0;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!seen.insert(symbols[i]).second) {
      throw Error(ErrorCode::DuplicateSymbol, "symbol '" + symbols[i] + "' repeated");
    }
    if (sgn(probs[i]) <= 0) {
      throw Error(ErrorCode::ZeroOrNegativeProbability,
                  "p(" + symbols[i] + ") = " + to_fraction_string(probs[i]));
    }
    total += probs[i];
  }
  if (total != 1) {
    throw Error(ErrorCode::ProbabilitySumNotOne, "probabilities sum to " + to_fraction_string(total));
  }
  Source src;
  src.symbols_ = std::move(symbols);
  src.probs_ = std::move(probs);
  return src;
}

double entropy(std::span<const Rational> probs, std::uint32_t radix) {
  if (radix < 2) throw Error(ErrorCode::InvalidRadix, "entropy needs radix >= 2");
  const double log_r = std::log(static_cast<double>(radix));
  double h = 0.0;
  for (const auto& p : probs) {
    const double x = to_double(p);
    if (x > 0.0) h -= x * std::log(x);
  }
  return h / log_r;
}

double entropy(const Source& src, std::uint32_t radix) {
  return entropy(src.probabilities(), radix);
}

Source extend_source(const Source& src, std::uint32_t power, std::size_t cap) {
  if (power == 0) throw Error(ErrorCode::InvalidArgument, "extension power must be >= 1");
  if (power == 1) return src;
  const std::size_t n = src.size();
  std::size_t total = 1;
  for (std::uint32_t k = 0; k < power; ++k) {
    if (total > cap / n) {
      throw Error(ErrorCode::ExtensionTooLarge, "n^p exceeds cap " + std::to_string(cap));
    }
    total *= n;
  }
  if (total > cap) throw Error(ErrorCode::ExtensionTooLarge, "n^p exceeds cap " + std::to_string(cap));

  std::vector<std::string> symbols;
  std::vector<Rational> probs;
  symbols.reserve(total);
  probs.reserve(total);
  std::vector<std::size_t> digits(power, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::string name = "(";
    Rational p = 1;
    for (std::uint32_t k = 0; k < power; ++k) {
      if (k) name += ',';
      name += src.symbol(digits[k]);
      p *= src.probability(digits[k]);
    }
    name += ')';
    symbols.push_back(std::move(name));
    probs.push_back(std::move(p));
    for (std::size_t k = power; k-- > 0;) {
      if (++digits[k] < n) break;
      digits[k] = 0;
    }
  }
  return make_source(std::move(symbols), std::move(probs));
}

SymbolSampler::SymbolSampler(std::span<const Rational> probs) {
  BigInt two64;
  mpz_ui_pow_ui(two64.get_mpz_t(), 2, 64);
  Rational cumulative = 0;
  thresholds_.reserve(probs.size());
  for (const auto& p : probs) {
    cumulative += p;
    Rational scaled = cumulative * Rational(two64);
    BigInt floor_value = scaled.get_num() / scaled.get_den();
    if (floor_value >= two64) {
      thresholds_.push_back(UINT64_MAX);
    } else {
      // two halves keep this portable across 32-bit `unsigned long`
      BigInt hi = floor_value >> 32;
      BigInt lo = floor_value - (hi << 32);
      thresholds_.push_back((static_cast<std::uint64_t>(hi.get_ui()) << 32) | lo.get_ui());
    }
  }
}

std::vector<std::size_t> sample_stream(const Source& src, std::size_t count, StreamSeed seed) {
  SymbolSampler sampler(src.probabilities());
  std::mt19937_64 engine(seed.seed);
  std::vector<std::size_t> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler(engine));
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace nct
