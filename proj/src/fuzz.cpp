#include "nct/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nct/decipherability.hpp"
#include "nct/error.hpp"
#include "nct/proof.hpp"

namespace nct {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<std::string> default_symbols(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("s" + std::to_string(i + 1));
  return out;
}

void note(FuzzReport& report, const std::string& what) {
  if (report.first_failures.size() < 8) report.first_failures.push_back(what);
}

void check_certificate(const Source& src, const Code& code, const FuzzConfig& config,
                       FuzzReport& report, std::size_t trial, bool check_condition) {
  const auto cert = certify(src, code);
  ++report.certificates;
  if (cert.canonicalized) ++report.canonicalized;
  const std::string tag = "trial " + std::to_string(trial) + ": ";
  const double input_acl = to_double(cert.input_acl);

  if (cert.entropy > cert.acl + config.tolerance || cert.entropy > input_acl + config.tolerance) {
    ++report.theorem_violations;
    note(report, tag + "H exceeds ACL");
  }
  if (std::abs(cert.sum_delta - (cert.entropy - cert.acl)) > config.tolerance) {
    ++report.telescoping_violations;
    note(report, tag + "telescoping mismatch");
  }
  bool delta_ok = true;
  for (const auto& step : cert.steps) {
    if (step.delta > 1e-12) delta_ok = false;
    const auto group = check_group_inequality(step.probabilities, code.radix());
    const auto ghm = check_rational_ghm(weights_from_probabilities(step.probabilities, code.radix()));
    const auto pp = check_pp_inequalities(step.probabilities, code.radix());
    if (!group.holds || !ghm.holds || group.holds != ghm.holds || !pp.ineq_a || (pp.ineq_b && !*pp.ineq_b) ||
        group.tight != step.is_tight) {
      ++report.inequality_failures;
      note(report, tag + "closing inequality failed");
    }
  }
  if (!delta_ok) {
    ++report.delta_violations;
    note(report, tag + "positive delta");
  }

  const bool verdict_eq = cert.verdict == Verdict::Equality;
  if (verdict_eq) ++report.equality_verdicts;
  const bool numeric_eq = std::abs(cert.entropy - input_acl) <= config.tolerance;
  // Codes that were canonicalized are judged on the code actually certified.
  const bool exact_eq = check_condition
                            ? equality_condition(src, code).holds
                            : equality_condition(src, cert.certified_code).holds &&
                                  cert.input_acl == cert.certified_acl;
  if (verdict_eq != exact_eq || verdict_eq != numeric_eq) {
    ++report.verdict_disagreements;
    note(report, tag + "equality verdict disagreement");
  }
  if (!verify_certificate(cert, config.tolerance)) {
    ++report.replay_failures;
    note(report, tag + "certificate replay failed");
  }
}

}  // namespace

Source random_rational_source(std::size_t n, std::uint32_t max_denominator, std::mt19937_64& rng) {
  if (n == 0 || n > max_denominator) {
    throw Error(ErrorCode::InvalidArgument, "need 1 <= n <= max_denominator");
  }
  const std::size_t den = uniform(rng, n, max_denominator);
  // n-1 distinct cut points in 1..den-1 split den into n positive parts.
  std::set<std::size_t> cuts;
  while (cuts.size() + 1 < n) cuts.insert(uniform(rng, 1, den - 1));
  std::vector<Rational> probs;
  std::size_t prev = 0;
  for (auto c : cuts) {
    probs.emplace_back(static_cast<unsigned long>(c - prev), static_cast<unsigned long>(den));
    prev = c;
  }
  probs.emplace_back(static_cast<unsigned long>(den - prev), static_cast<unsigned long>(den));
  for (auto& p : probs) p.canonicalize();
  return make_source(default_symbols(n), std::move(probs));
}

Code random_tree_code(std::uint32_t radix, std::size_t max_leaves, bool full, std::mt19937_64& rng) {
  if (radix < 2) throw Error(ErrorCode::InvalidRadix, "random trees need radix >= 2");
  const std::size_t target = uniform(rng, 1, std::max<std::size_t>(1, max_leaves));
  std::vector<Codeword> leaves{Codeword{}};
  while (leaves.size() < target) {
    const std::size_t room = target - leaves.size() + 1;  // children one expansion may add
    std::size_t k = 0;
    if (full) {
      if (room < radix) break;
      k = radix;
    } else {
      k = uniform(rng, 2, std::min<std::size_t>(radix, room));
    }
    const std::size_t pick = uniform(rng, 0, leaves.size() - 1);
    Codeword parent = leaves[pick];
    leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(pick));
    std::vector<std::uint8_t> digits(radix);
    for (std::uint32_t d = 0; d < radix; ++d) digits[d] = static_cast<std::uint8_t>(d);
    std::shuffle(digits.begin(), digits.end(), rng);
    digits.resize(k);
    std::sort(digits.begin(), digits.end());
    for (auto d : digits) {
      Codeword child = parent;
      child.digits.push_back(d);
      leaves.push_back(std::move(child));
    }
  }
  std::shuffle(leaves.begin(), leaves.end(), rng);
  std::vector<CodeEntry> entries;
  const auto symbols = default_symbols(leaves.size());
  for (std::size_t i = 0; i < leaves.size(); ++i) entries.push_back({symbols[i], {leaves[i]}});
  return make_code(radix, std::move(entries));
}

Code reversed_code(const Code& code) {
  std::vector<CodeEntry> entries;
  for (const auto& e : code.entries()) {
    CodeEntry r{e.symbol, {}};
    for (auto w : e.codewords) {
      std::reverse(w.digits.begin(), w.digits.end());
      r.codewords.push_back(std::move(w));
    }
    entries.push_back(std::move(r));
  }
  return make_code(code.radix(), std::move(entries));
}

FuzzReport run_fuzz(const FuzzConfig& config) {
  FuzzReport report;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    std::mt19937_64 rng(derive_seed(config.seed, trial));
    ++report.trials;
    try {
      const auto radix = static_cast<std::uint32_t>(uniform(rng, config.min_radix, config.max_radix));
      const bool full = uniform(rng, 0, 1) == 0;
      const Code code = random_tree_code(radix, config.max_leaves, full, rng);
      // A quarter of the full trees get their matching r-adic source.
      const bool matched = full && uniform(rng, 0, 3) == 0;
      Source src = [&] {
        if (!matched) return random_rational_source(code.size(), config.max_denominator, rng);
        std::vector<std::string> symbols;
        std::vector<Rational> probs;
        for (const auto& e : code.entries()) {
          symbols.push_back(e.symbol);
          probs.push_back(inverse_power(radix, e.codewords.front().length()));
        }
        return make_source(std::move(symbols), std::move(probs));
      }();
      check_certificate(src, code, config, report, trial, true);
      const Code reversed = reversed_code(code);
      if (!is_prefix_free(reversed)) check_certificate(src, reversed, config, report, trial, false);
    } catch (const Error& e) {
      ++report.errors;
      note(report, "trial " + std::to_string(trial) + ": " + e.what());
    }
  }
  return report;
}

}  // namespace nct
