#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nct/code.hpp"
#include "nct/code_tree.hpp"
#include "nct/rational.hpp"
#include "nct/source.hpp"

namespace nct {

/// One sibling merge: s leaves under `parent` collapse into a single leaf
/// carrying the sum of their probabilities.
struct ReductionStep {
  Codeword parent;                      // x_red
  std::vector<std::string> symbols;     // merged symbols, digit order
  std::vector<Rational> probabilities;  // p_{i_1} .. p_{i_s}
  Rational p_red;
  std::size_t l_red = 0;
  /// Change of H - ACL across the merge:
  /// p_red log_r p_red - sum p log_r p - p_red, never positive.
  double delta = 0.0;
  /// Exact: s == r and all merged probabilities equal.
  bool is_tight = false;

  [[nodiscard]] std::size_t s() const noexcept { return probabilities.size(); }
};

struct ReductionResult {
  Source source;
  CodeTree tree;
  ReductionStep step;
};

/// Merges `group` of a compact tree whose leaves are symbols of `src`. The
/// merged symbol takes the position of its first member in the source and is
/// named `[a+b+...]`. Errors: InvalidGroup, NotCompact, InvalidRadix (r < 2).
ReductionResult reduction_step(const Source& src, const CodeTree& tree, const SiblingGroup& group);

enum class Verdict { StrictInequality, Equality };
std::string_view to_string(Verdict v) noexcept;

/// p_i = r^(-l_i) for every symbol; `internal` is z, and n = z(r-1)+1.
struct EqualityWitness {
  std::size_t internal = 0;
  std::vector<std::size_t> lengths;
};

struct ReductionCertificate {
  Source source;
  Code input_code;
  Code certified_code;   // prefix-free, compact, single-valued
  bool minimal_reduced = false;  // input had a symbol with a longer alternative
  bool canonicalized = false;    // UD but not prefix-free; rebuilt on the same lengths
  bool compacted = false;        // standalone children were spliced out
  Rational input_acl;            // ACL after minimal reduction, before compaction
  Rational certified_acl;
  std::vector<ReductionStep> steps;  // ends at the single-leaf code
  double entropy = 0.0;
  double acl = 0.0;                  // of certified_code
  double sum_delta = 0.0;
  Verdict verdict = Verdict::StrictInequality;
  std::optional<EqualityWitness> witness;
};

/// Runs the whole chain: minimal reduction, UD check, canonical instantaneous
/// code on the same lengths when needed, compaction, then sibling merges down
/// to the lambda code. Radix 1 is accepted only for a single symbol.
/// Errors: NotUniquelyDecipherable, RadixOneUnsupported, MissingSymbol,
/// InvalidArgument (code has symbols the source lacks).
ReductionCertificate certify(const Source& src, const Code& code);

/// Re-derives the chain from `cert.certified_code` and checks that it matches,
/// ends at a single leaf and telescopes within `tolerance`.
bool verify_certificate(const ReductionCertificate& cert, double tolerance = 1e-9);

/// One line per step then a summary line; byte-stable.
std::string serialize(const ReductionCertificate& cert);

struct EqualityCheck {
  bool holds = false;
  std::optional<EqualityWitness> witness;
};

/// Exact test of p_i = r^(-l_i) for all i on a prefix-free single-valued
/// code. For r = 1 only the lambda code qualifies.
EqualityCheck equality_condition(const Source& src, const Code& code);

struct GroupInequality {
  double value = 0.0;  // prod (r p_k / sum p)^(p_k)
  bool holds = false;  // value >= 1 - 1e-12
  bool tight = false;  // exact: s == r, all p_k equal
};

/// Errors: InvalidArgument (empty), ZeroOrNegativeProbability,
/// GroupLargerThanRadix.
GroupInequality check_group_inequality(std::span<const Rational> probs, std::uint32_t radix);

/// Integer frequencies of a probability group: p_k = f_k / F.
struct RationalWeights {
  std::vector<BigInt> frequencies;
  std::uint32_t radix = 2;

  [[nodiscard]] BigInt total() const;  // F, which is also f_red
  [[nodiscard]] std::size_t s() const noexcept { return frequencies.size(); }
};

/// Scales the group by the lcm of its denominators.
RationalWeights weights_from_probabilities(std::span<const Rational> probs, std::uint32_t radix);

struct RationalGhm {
  Rational lhs;  // prod (r f_k / F)^(f_k)
  Rational rhs;  // (r / s)^F
  bool holds = false;  // lhs >= rhs >= 1, decided exactly
};

/// Exact integer check of the weighted GM-HM bound behind each merge.
/// Errors: InvalidArgument (empty, non-positive, F beyond 10^6),
/// GroupLargerThanRadix.
RationalGhm check_rational_ghm(const RationalWeights& weights);

struct PpInequalities {
  bool ineq_a = false;                // (sum p / r)^(sum p) <= prod p^p
  std::optional<bool> ineq_b;         // prod p^p >= 1/s, only when sum p == 1
};

PpInequalities check_pp_inequalities(std::span<const Rational> probs, std::uint32_t radix);

}  // namespace nct
