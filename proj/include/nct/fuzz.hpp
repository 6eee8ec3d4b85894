#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nct/code.hpp"
#include "nct/source.hpp"

namespace nct {

// Random instance generators shared by the fuzz command and the test suites.

/// n positive rationals with a common denominator D <= max_denominator
/// (D >= n), summing to one. Symbols are s1..sn.
Source random_rational_source(std::size_t n, std::uint32_t max_denominator, std::mt19937_64& rng);

/// Prefix-free code of a random compact r-ary tree with at most max_leaves
/// leaves. With `full` every internal node has r children; otherwise each
/// expansion uses a random subset of 2..r digits.
Code random_tree_code(std::uint32_t radix, std::size_t max_leaves, bool full, std::mt19937_64& rng);

/// Every codeword reversed. Reversal keeps lengths and maps a prefix-free code
/// to a suffix-free one, which is still uniquely decipherable.
Code reversed_code(const Code& code);

struct FuzzConfig {
  std::uint64_t seed = 7;
  std::size_t trials = 10'000;
  std::uint32_t min_radix = 2;
  std::uint32_t max_radix = 5;
  std::size_t max_leaves = 12;
  std::uint32_t max_denominator = 64;
  double tolerance = 1e-9;
};

struct FuzzReport {
  std::size_t trials = 0;
  std::size_t certificates = 0;  // includes the reversed-code certificates
  std::size_t equality_verdicts = 0;
  std::size_t canonicalized = 0;
  std::size_t theorem_violations = 0;     // H > ACL + tol
  std::size_t telescoping_violations = 0; // |sum_delta - (H - ACL)| > tol
  std::size_t delta_violations = 0;       // some delta > 1e-12
  std::size_t verdict_disagreements = 0;  // verdict / exact condition / |H-ACL|
  std::size_t inequality_failures = 0;    // closing inequalities or oracle mismatch
  std::size_t replay_failures = 0;
  std::size_t errors = 0;                 // unexpected exceptions
  std::vector<std::string> first_failures;

  [[nodiscard]] std::size_t violations() const noexcept {
    return theorem_violations + telescoping_violations + delta_violations + verdict_disagreements +
           inequality_failures + replay_failures + errors;
  }
};

/// Per-trial seeds come from derive_seed(config.seed, trial), so runs are
/// reproducible and trials independent.
FuzzReport run_fuzz(const FuzzConfig& config);

}  // namespace nct
