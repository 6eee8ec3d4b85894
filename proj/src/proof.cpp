#include "nct/proof.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nct/decipherability.hpp"
#include "nct/error.hpp"

namespace nct {

namespace {

constexpr double kHoldSlack = 1e-12;

std::string merged_name(const Source& src, const std::vector<std::string>& members) {
  std::string name = "[";
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (k) name += '+';
    name += members[k];
  }
  name += ']';
  while (src.index_of(name) != src.size()) name += '\'';
  return name;
}

// p_red * (H_r(p / p_red) - 1), the merge defect in its numerically stable form.
double merge_delta(std::span<const Rational> probs, const Rational& p_red, std::uint32_t radix) {
  const double log_r = std::log(static_cast<double>(radix));
  double conditional = 0.0;
  for (const auto& p : probs) {
    const double q = to_double(Rational(p / p_red));
    conditional -= q * std::log(q);
  }
  return to_double(p_red) * (conditional / log_r - 1.0);
}

bool all_equal(std::span<const Rational> probs) {
  return std::all_of(probs.begin(), probs.end(), [&](const Rational& p) { return p == probs.front(); });
}

void check_alignment(const Source& src, const Code& code) {
  for (const auto& s : src.symbols()) {
    if (!code.find(s)) throw Error(ErrorCode::MissingSymbol, "code has no codeword for '" + s + "'");
  }
  if (code.size() != src.size()) {
    throw Error(ErrorCode::InvalidArgument, "code has symbols that the source does not");
  }
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
  return v == Verdict::Equality ? "Equality" : "StrictInequality";
}

ReductionResult reduction_step(const Source& src, const CodeTree& tree, const SiblingGroup& group) {
  const std::uint32_t radix = tree.radix();
  if (radix < 2) throw Error(ErrorCode::InvalidRadix, "sibling merges need radix >= 2");
  if (!tree.is_compact()) throw Error(ErrorCode::NotCompact, "tree has a standalone child");
  if (group.size() < 2 || group.size() > radix) {
    throw Error(ErrorCode::InvalidGroup, "group size must lie in [2, r]");
  }

  // The group must be exactly the children of one internal node.
  const auto& nodes = tree.nodes();
  std::size_t parent = CodeTree::npos;
  for (auto id : group.members) {
    if (id >= nodes.size() || !nodes[id].is_leaf()) throw Error(ErrorCode::InvalidGroup, "member is not a leaf");
    if (parent == CodeTree::npos) parent = nodes[id].parent;
    if (nodes[id].parent != parent) throw Error(ErrorCode::InvalidGroup, "members do not share a parent");
  }
  if (parent == CodeTree::npos || nodes[parent].path != group.parent ||
      nodes[parent].child_count() != group.size()) {
    throw Error(ErrorCode::InvalidGroup, "group is not the full child set of its parent");
  }

  ReductionStep step;
  step.parent = group.parent;
  step.l_red = group.parent.length();
  std::set<std::size_t> member_index;
  for (auto id : group.members) {
    const auto& symbol = nodes[id].leaf->symbol;
    const std::size_t at = src.index_of(symbol);
    if (at == src.size()) throw Error(ErrorCode::InvalidGroup, "member '" + symbol + "' not in source");
    member_index.insert(at);
    step.symbols.push_back(symbol);
    step.probabilities.push_back(src.probability(at));
    step.p_red += src.probability(at);
  }
  step.delta = merge_delta(step.probabilities, step.p_red, radix);
  step.is_tight = group.size() == radix && all_equal(step.probabilities);

  const std::string name = merged_name(src, step.symbols);
  std::vector<std::string> symbols;
  std::vector<Rational> probs;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (member_index.count(i)) {
      if (i == *member_index.begin()) {
        symbols.push_back(name);
        probs.push_back(step.p_red);
      }
      continue;
    }
    symbols.push_back(src.symbol(i));
    probs.push_back(src.probability(i));
  }
  Source reduced = make_source(std::move(symbols), std::move(probs));

  std::vector<std::pair<Codeword, LeafPayload>> leaves;
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const auto& n = nodes[id];
    if (!n.is_leaf() || n.parent == parent) continue;
    const std::size_t at = reduced.index_of(n.leaf->symbol);
    if (at == reduced.size()) throw Error(ErrorCode::InvalidGroup, "leaf '" + n.leaf->symbol + "' not in source");
    leaves.emplace_back(n.path, LeafPayload{n.leaf->symbol, reduced.probability(at), at});
  }
  const std::size_t at = reduced.index_of(name);
  leaves.emplace_back(group.parent, LeafPayload{name, step.p_red, at});
  CodeTree reduced_tree = CodeTree::from_leaves(radix, std::move(leaves));

  return {std::move(reduced), std::move(reduced_tree), std::move(step)};
}

EqualityCheck equality_condition(const Source& src, const Code& code) {
  check_alignment(src, code);
  if (!code.is_single_valued()) {
    throw Error(ErrorCode::UnsupportedMultiCodeword, "equality condition needs one codeword per symbol");
  }
  if (!is_prefix_free(code)) throw Error(ErrorCode::NotPrefixFree, "equality condition needs a prefix-free code");
  const std::uint32_t radix = code.radix();
  EqualityCheck out;
  EqualityWitness witness;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const std::size_t l = code.find(src.symbol(i))->codewords.front().length();
    // 1^(-l) = 1 for every l, but only lambda attains H = ACL = 0.
    const bool matches = radix == 1 ? l == 0 : src.probability(i) == inverse_power(radix, l);
    if (!matches) return out;
    witness.lengths.push_back(l);
  }
  const auto stats = tree_stats(to_tree(code));
  witness.internal = stats.internal;
  if (radix >= 2 && src.size() != stats.internal * (radix - 1) + 1) {
    throw Error(ErrorCode::InvariantViolation, "p_i = r^-l_i without n = z(r-1)+1");
  }
  out.holds = true;
  out.witness = std::move(witness);
  return out;
}

ReductionCertificate certify(const Source& src, const Code& code) {
  check_alignment(src, code);
  const std::uint32_t radix = code.radix();
  if (radix == 1 && src.size() > 1) {
    throw Error(ErrorCode::RadixOneUnsupported,
                "over a unary alphabet only single-codeword codes are uniquely decipherable");
  }

  Code reduced = minimal_reduction(code);
  if (!is_uniquely_decipherable(reduced)) {
    throw Error(ErrorCode::NotUniquelyDecipherable, "code is not uniquely decipherable");
  }
  const bool minimal_reduced = !(reduced == code);
  bool canonicalized = false;
  if (!is_prefix_free(reduced)) {
    std::vector<std::string> symbols;
    for (const auto& e : reduced.entries()) symbols.push_back(e.symbol);
    reduced = construct_instantaneous(reduced.lengths(), radix, symbols);
    canonicalized = true;
  }

  const CodeTree initial = to_tree(reduced, src);
  const Rational input_acl = initial.acl_exact();
  CodeTree tree = compact_standalone(initial);
  const bool compacted = !initial.is_compact();

  ReductionCertificate cert{.source = src,
                            .input_code = code,
                            .certified_code = from_tree(tree),
                            .minimal_reduced = minimal_reduced,
                            .canonicalized = canonicalized,
                            .compacted = compacted,
                            .input_acl = input_acl,
                            .certified_acl = tree.acl_exact(),
                            .steps = {},
                            .witness = std::nullopt};

  Source current = src;
  while (tree.leaf_count() > 1) {
    auto result = reduction_step(current, tree, find_sibling_group(tree));
    cert.sum_delta += result.step.delta;
    cert.steps.push_back(std::move(result.step));
    current = std::move(result.source);
    tree = std::move(result.tree);
  }

  cert.entropy = radix >= 2 ? entropy(src, radix) : 0.0;
  cert.acl = to_double(cert.certified_acl);
  const bool all_tight = std::all_of(cert.steps.begin(), cert.steps.end(),
                                     [](const ReductionStep& s) { return s.is_tight; });
  // Compaction only ever shortens positive-probability leaves, so any change
  // of ACL there is already a strict gap.
  if (all_tight && cert.input_acl == cert.certified_acl) {
    cert.verdict = Verdict::Equality;
    cert.witness = equality_condition(src, cert.certified_code).witness;
  }
  return cert;
}

bool verify_certificate(const ReductionCertificate& cert, double tolerance) {
  try {
    CodeTree tree = to_tree(cert.certified_code, cert.source);
    if (!tree.is_compact()) return false;
    Source current = cert.source;
    double sum = 0.0;
    for (const auto& expected : cert.steps) {
      if (tree.leaf_count() < 2) return false;
      auto result = reduction_step(current, tree, find_sibling_group(tree));
      const auto& got = result.step;
      if (got.parent != expected.parent || got.probabilities != expected.probabilities ||
          got.p_red != expected.p_red || got.is_tight != expected.is_tight || got.delta != expected.delta) {
        return false;
      }
      if (got.delta > kHoldSlack) return false;
      sum += got.delta;
      current = std::move(result.source);
      tree = std::move(result.tree);
    }
    if (tree.leaf_count() != 1 || !tree.root().is_leaf()) return false;
    if (std::abs((cert.entropy - cert.acl) - sum) > tolerance) return false;
    const bool equality_now = equality_condition(cert.source, cert.certified_code).holds &&
                              cert.input_acl == cert.certified_acl;
    return (cert.verdict == Verdict::Equality) == equality_now;
  } catch (const Error&) {
    return false;
  }
}

std::string serialize(const ReductionCertificate& cert) {
  std::string out;
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    const auto& s = cert.steps[k];
    out += "step " + std::to_string(k + 1) + ": merge parent=" + s.parent.str() +
           " s=" + std::to_string(s.s()) + " p_red=" + to_fraction_string(s.p_red) +
           " delta=" + format_double(s.delta) + " tight=" + (s.is_tight ? "true" : "false") + "\n";
  }
  out += "H=" + format_double(cert.entropy) + " ACL=" + format_double(cert.acl) +
         " sum_delta=" + format_double(cert.sum_delta) + " verdict=" + std::string(to_string(cert.verdict)) +
         "\n";
  return out;
}

GroupInequality check_group_inequality(std::span<const Rational> probs, std::uint32_t radix) {
  if (probs.empty()) throw Error(ErrorCode::InvalidArgument, "empty group");
  if (radix < 1) throw Error(ErrorCode::InvalidRadix, "radix must be >= 1");
  if (probs.size() > radix) throw Error(ErrorCode::GroupLargerThanRadix, "group has more than r members");
  Rational total = 0;
  for (const auto& p : probs) {
    if (sgn(p) <= 0) throw Error(ErrorCode::ZeroOrNegativeProbability, "group weights must be positive");
    total += p;
  }
  double log_value = 0.0;
  for (const auto& p : probs) {
    const Rational ratio = Rational(radix) * p / total;
    log_value += to_double(p) * std::log(to_double(ratio));
  }
  GroupInequality out;
  out.value = std::exp(log_value);
  out.holds = out.value >= 1.0 - kHoldSlack;
  out.tight = probs.size() == radix && all_equal(probs);
  return out;
}

BigInt RationalWeights::total() const {
  BigInt F = 0;
  for (const auto& f : frequencies) F += f;
  return F;
}

RationalWeights weights_from_probabilities(std::span<const Rational> probs, std::uint32_t radix) {
  BigInt scale = 1;
  for (const auto& p : probs) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), p.get_den_mpz_t());
  RationalWeights w;
  w.radix = radix;
  for (const auto& p : probs) w.frequencies.push_back(p.get_num() * (scale / p.get_den()));
  return w;
}

RationalGhm check_rational_ghm(const RationalWeights& weights) {
  const auto& f = weights.frequencies;
  const std::uint32_t radix = weights.radix;
  if (f.empty()) throw Error(ErrorCode::InvalidArgument, "empty group");
  if (f.size() > radix) throw Error(ErrorCode::GroupLargerThanRadix, "group has more than r members");
  for (const auto& x : f) {
    if (sgn(x) <= 0) throw Error(ErrorCode::InvalidArgument, "frequencies must be positive");
  }
  const BigInt F = weights.total();
  if (F > 1'000'000) throw Error(ErrorCode::InvalidArgument, "F too large for exact powers");

  auto power = [](const Rational& base, unsigned long e) {
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    return Rational(num, den);
  };

  RationalGhm out;
  out.lhs = 1;
  for (const auto& x : f) {
    Rational base(BigInt(radix) * x, F);
    base.canonicalize();
    out.lhs *= power(base, x.get_ui());
  }
  Rational ratio(BigInt(radix), BigInt(static_cast<unsigned long>(f.size())));
  ratio.canonicalize();
  out.rhs = power(ratio, F.get_ui());
  out.holds = out.lhs >= out.rhs && out.rhs >= 1;
  return out;
}

PpInequalities check_pp_inequalities(std::span<const Rational> probs, std::uint32_t radix) {
  if (probs.empty()) throw Error(ErrorCode::InvalidArgument, "empty group");
  if (radix < 1) throw Error(ErrorCode::InvalidRadix, "radix must be >= 1");
  Rational total = 0;
  double log_product = 0.0;  // ln prod p^p
  for (const auto& p : probs) {
    if (sgn(p) <= 0) throw Error(ErrorCode::ZeroOrNegativeProbability, "weights must be positive");
    total += p;
    const double x = to_double(p);
    log_product += x * std::log(x);
  }
  const double t = to_double(total);
  PpInequalities out;
  out.ineq_a = t * std::log(to_double(Rational(total / radix))) <= log_product + kHoldSlack;
  if (total == 1) {
    out.ineq_b = log_product >= -std::log(static_cast<double>(probs.size())) - kHoldSlack;
  }
  return out;
}

}  // namespace nct
