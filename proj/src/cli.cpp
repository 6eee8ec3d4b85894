#include "nct/cli.hpp"

#include <sstream>
#include <utility>

#include "nct/code.hpp"
#include "nct/decipherability.hpp"
#include "nct/error.hpp"
#include "nct/fuzz.hpp"
#include "nct/io.hpp"
#include "nct/proof.hpp"
#include "nct/source.hpp"

namespace nct {

namespace {

// Ordered key/value record; `key=value` lines in machine mode.
class Report {
 public:
  explicit Report(OutputMode mode) : mode_(mode) {}

  Report& add(std::string key, std::string value) {
    fields_.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  Report& add(std::string key, double value) { return add(std::move(key), format_double(value)); }
  Report& add(std::string key, bool value) { return add(std::move(key), std::string(value ? "true" : "false")); }
  Report& add(std::string key, std::size_t value) { return add(std::move(key), std::to_string(value)); }
  Report& add(std::string key, const Rational& value) { return add(std::move(key), to_fraction_string(value)); }
  Report& text(std::string block) {
    blocks_.push_back(std::move(block));
    return *this;
  }

  void print(std::ostream& out) const {
    if (mode_ == OutputMode::Human) {
      for (const auto& b : blocks_) out << b;
    }
    for (const auto& [k, v] : fields_) out << k << (mode_ == OutputMode::Machine ? "=" : ": ") << v << '\n';
  }

 private:
  OutputMode mode_;
  std::vector<std::pair<std::string, std::string>> fields_;
  std::vector<std::string> blocks_;
};

const std::string& input(const RunConfig& cfg, std::size_t k, const char* what) {
  if (cfg.inputs.size() <= k) {
    throw Error(ErrorCode::InvalidArgument, cfg.subcommand + " needs a " + what + " file");
  }
  return cfg.inputs[k];
}

Source load_source(const RunConfig& cfg, std::size_t k = 0) {
  const auto& path = input(cfg, k, "source");
  return parse_source(read_file(path), path);
}

ParsedCode load_code(const RunConfig& cfg, std::size_t k) {
  const auto& path = input(cfg, k, "code");
  return parse_code(read_file(path), path);
}

std::uint32_t radix_or(const RunConfig& cfg, std::uint32_t fallback) { return cfg.radix.value_or(fallback); }

std::string join_lengths(const std::vector<std::size_t>& lengths) {
  std::string s;
  for (std::size_t i = 0; i < lengths.size(); ++i) s += (i ? "," : "") + std::to_string(lengths[i]);
  return s;
}

int run_entropy(const RunConfig& cfg, Report& r) {
  const auto src = load_source(cfg);
  const auto radix = radix_or(cfg, 2);
  r.add("n", src.size()).add("radix", std::size_t{radix}).add("H", entropy(src, radix));
  return kExitOk;
}

int run_acl(const RunConfig& cfg, Report& r) {
  const auto src = load_source(cfg);
  const auto code = load_code(cfg, 1);
  const auto exact = acl_exact(src, code.code, code.policy);
  r.add("radix", std::size_t{code.code.radix()}).add("ACL", to_double(exact)).add("ACL_exact", exact);
  if (code.code.radix() >= 2) r.add("H", entropy(src, code.code.radix()));
  return kExitOk;
}

int run_kraft(const RunConfig& cfg, Report& r) {
  std::vector<std::size_t> lengths;
  std::uint32_t radix = radix_or(cfg, 2);
  if (!cfg.lengths.empty()) {
    lengths = parse_length_list(cfg.lengths);
  } else {
    const auto code = load_code(cfg, 0);
    radix = radix_or(cfg, code.code.radix());
    for (const auto& w : code.code.pooled()) lengths.push_back(w.length());
  }
  const auto sum = kraft_sum(lengths, radix);
  const bool holds = sum <= 1;
  r.add("radix", std::size_t{radix}).add("kraft_sum", sum).add("kraft_sum_float", to_double(sum)).add("holds", holds);
  return holds ? kExitOk : kExitViolated;
}

std::vector<std::size_t> pooled_lengths(const Code& code) {
  std::vector<std::size_t> l;
  for (const auto& w : code.pooled()) l.push_back(w.length());
  return l;
}

int run_check_ud(const RunConfig& cfg, Report& r) {
  const auto code = load_code(cfg, 0).code;
  bool ud = false;
  std::optional<Codeword> witness;
  if (code.is_single_valued()) {
    ud = is_uniquely_decipherable(code);
    r.add("method", std::string("sardinas-patterson"));
    if (!ud) witness = find_ambiguity(code, cfg.max_len);
  } else {
    witness = find_symbol_ambiguity(code, cfg.max_len);
    ud = !witness.has_value();
    r.add("method", std::string("exhaustive-symbol-decoding")).add("max_len", cfg.max_len);
  }
  r.add("uniquely_decipherable", ud).add("non_singular", is_non_singular(code));
  if (code.radix() >= 2) r.add("kraft_sum", kraft_sum(pooled_lengths(code), code.radix()));
  if (witness) r.add("witness", witness->str());
  return ud ? kExitOk : kExitViolated;
}

int run_check_prefix(const RunConfig& cfg, Report& r) {
  const auto code = load_code(cfg, 0).code;
  const bool pf = is_prefix_free(code);
  r.add("prefix_free", pf);
  if (code.radix() >= 2) r.add("kraft_sum", kraft_sum(pooled_lengths(code), code.radix()));
  return pf ? kExitOk : kExitViolated;
}

int run_build_code(const RunConfig& cfg, std::ostream& out) {
  if (cfg.lengths.empty()) throw Error(ErrorCode::InvalidArgument, "build-code needs --lengths");
  const auto lengths = parse_length_list(cfg.lengths);
  out << write_code(construct_instantaneous(lengths, radix_or(cfg, 2)));
  return kExitOk;
}

int run_huffman(const RunConfig& cfg, Report& r) {
  const auto src = load_source(cfg);
  const auto radix = radix_or(cfg, 2);
  const auto code = huffman(src, radix);
  r.text(write_code(code));
  const auto exact = acl_exact(src, code);
  r.add("lengths", join_lengths(code.lengths())).add("ACL", to_double(exact)).add("ACL_exact", exact);
  r.add("H", entropy(src, radix));
  if (cfg.mode == OutputMode::Machine) {
    for (const auto& e : code.entries()) r.add("codeword." + e.symbol, e.codewords.front().str());
  }
  return kExitOk;
}

int run_certify(const RunConfig& cfg, Report& r) {
  const auto src = load_source(cfg);
  const auto code = load_code(cfg, 1).code;
  const auto cert = certify(src, code);
  const std::string body = serialize(cert);
  r.text(body);
  if (cfg.mode == OutputMode::Machine) {
    for (std::size_t k = 0; k < cert.steps.size(); ++k) {
      const auto& s = cert.steps[k];
      const std::string p = "step." + std::to_string(k + 1) + ".";
      r.add(p + "parent", s.parent.str()).add(p + "s", s.s()).add(p + "p_red", s.p_red);
      r.add(p + "delta", s.delta).add(p + "tight", s.is_tight);
    }
  }
  r.add("H", cert.entropy).add("ACL", cert.acl).add("sum_delta", cert.sum_delta);
  r.add("verdict", std::string(to_string(cert.verdict)));
  r.add("steps", cert.steps.size());
  r.add("input_ACL", cert.input_acl).add("certified_ACL", cert.certified_acl);
  r.add("minimal_reduced", cert.minimal_reduced).add("canonicalized", cert.canonicalized);
  r.add("compacted", cert.compacted);
  if (cert.witness) {
    r.add("z", cert.witness->internal).add("n", src.size());
    r.add("witness_lengths", join_lengths(cert.witness->lengths));
  }
  const bool ok = verify_certificate(cert, cfg.tolerance);
  r.add("replay", ok);
  return ok ? kExitOk : kExitViolated;
}

int run_simulate(const RunConfig& cfg, Report& r) {
  const auto src = load_source(cfg);
  const auto parsed = load_code(cfg, 1);
  Chooser chooser;
  if (cfg.chooser == "policy") {
    if (parsed.code.is_single_valued()) {
      chooser = first_chooser();
    } else {
      if (!parsed.policy) throw Error(ErrorCode::MissingPolicy, "policy chooser needs `@` weights");
      chooser = policy_chooser(parsed.code, *parsed.policy, derive_seed(cfg.seed, 0));
    }
  } else if (cfg.chooser == "first") {
    chooser = first_chooser();
  } else if (cfg.chooser == "longest") {
    chooser = longest_chooser();
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown chooser '" + cfg.chooser + "'");
  }
  const auto trace = empirical_acl(src, parsed.code, chooser, cfg.stream_length, StreamSeed{cfg.seed});
  const std::size_t t = trace.steps();
  r.add("t", t).add("seed", std::to_string(cfg.seed));
  r.add("ACL_t", trace.acl_at(t)).add("reduced_ACL_t", trace.reduced_acl_at(t));
  if (parsed.code.is_single_valued() || parsed.policy) {
    r.add("ACL", acl(src, parsed.code, parsed.policy));
  }
  r.add("reduced_ACL", acl(src, minimal_reduction(parsed.code)));
  for (std::size_t i = 0; i < src.size(); ++i) r.add("f." + src.symbol(i), trace.frequencies[i]);
  r.add("pathwise_violations", trace.pathwise_violations());
  return trace.pathwise_violations() == 0 ? kExitOk : kExitViolated;
}

int run_fuzz_command(const RunConfig& cfg, Report& r) {
  FuzzConfig fc;
  fc.seed = cfg.seed;
  fc.trials = cfg.trials;
  fc.tolerance = cfg.tolerance;
  if (cfg.radix) fc.min_radix = fc.max_radix = *cfg.radix;
  const auto report = run_fuzz(fc);
  r.add("trials", report.trials).add("certificates", report.certificates);
  r.add("equality_verdicts", report.equality_verdicts).add("canonicalized", report.canonicalized);
  r.add("theorem_violations", report.theorem_violations);
  r.add("telescoping_violations", report.telescoping_violations);
  r.add("delta_violations", report.delta_violations);
  r.add("verdict_disagreements", report.verdict_disagreements);
  r.add("inequality_failures", report.inequality_failures);
  r.add("replay_failures", report.replay_failures).add("errors", report.errors);
  for (const auto& f : report.first_failures) r.add("failure", f);
  r.add("violations", report.violations());
  return report.violations() == 0 ? kExitOk : kExitViolated;
}

int run_check_ineq(const RunConfig& cfg, Report& r) {
  if (cfg.probs.empty()) throw Error(ErrorCode::InvalidArgument, "check-ineq needs --probs");
  const auto probs = parse_rational_list(cfg.probs);
  const auto radix = radix_or(cfg, 2);
  const auto group = check_group_inequality(probs, radix);
  const auto ghm = check_rational_ghm(weights_from_probabilities(probs, radix));
  const auto pp = check_pp_inequalities(probs, radix);
  r.add("group_value", group.value).add("group_holds", group.holds).add("group_tight", group.tight);
  r.add("ghm_lhs", ghm.lhs).add("ghm_rhs", ghm.rhs).add("ghm_holds", ghm.holds);
  r.add("pp_a", pp.ineq_a);
  if (pp.ineq_b) r.add("pp_b", *pp.ineq_b);
  const bool ok = group.holds && ghm.holds && pp.ineq_a && pp.ineq_b.value_or(true);
  return ok ? kExitOk : kExitViolated;
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (!(cfg.tolerance > 0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (cfg.trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Report report(cfg.mode);
  int status = kExitOk;
  try {
    validate(cfg);
    const auto& cmd = cfg.subcommand;
    if (cmd == "entropy") status = run_entropy(cfg, report);
    else if (cmd == "acl") status = run_acl(cfg, report);
    else if (cmd == "kraft") status = run_kraft(cfg, report);
    else if (cmd == "check-ud") status = run_check_ud(cfg, report);
    else if (cmd == "check-prefix") status = run_check_prefix(cfg, report);
    else if (cmd == "build-code") return run_build_code(cfg, out);
    else if (cmd == "huffman") status = run_huffman(cfg, report);
    else if (cmd == "certify") status = run_certify(cfg, report);
    else if (cmd == "simulate") status = run_simulate(cfg, report);
    else if (cmd == "fuzz") status = run_fuzz_command(cfg, report);
    else if (cmd == "check-ineq") status = run_check_ineq(cfg, report);
    else throw Error(ErrorCode::InvalidArgument, "unknown subcommand '" + cmd + "'");
  } catch (const Error& e) {
    // A non-UD code handed to certify is a violated property, not bad input.
    if (e.code() == ErrorCode::NotUniquelyDecipherable) {
      report.add("error", std::string(to_string(e.code())));
      report.print(out);
      err << e.what() << '\n';
      return kExitViolated;
    }
    err << e.what() << '\n';
    return kExitInputError;
  }
  report.print(out);
  return status;
}

}  // namespace nct
