// nct: entropy, average codeword length, decipherability and proof
// certificates for finite memoryless sources.

#include <iostream>

#include "CLI11.hpp"
#include "nct/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Noiseless coding theorem toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  nct::RunConfig cfg;
  std::uint32_t radix = 0;
  bool machine = false;
  app.add_option("--radix", radix, "Code radix r")->check(CLI::Range(1u, 36u));
  app.add_option("--seed", cfg.seed, "Master seed");
  app.add_option("--trials", cfg.trials, "Fuzz trial count");
  app.add_option("--t", cfg.stream_length, "Stream length for simulate");
  app.add_option("--tol", cfg.tolerance, "Numeric tolerance");
  app.add_option("--max-len", cfg.max_len, "Brute-force digit budget");
  app.add_option("--lengths", cfg.lengths, "Comma-separated codeword lengths");
  app.add_option("--probs", cfg.probs, "Comma-separated rational weights");
  app.add_option("--chooser", cfg.chooser, "simulate: policy, first or longest");
  app.add_flag("--machine", machine, "Emit key=value lines");

  struct Sub {
    const char* name;
    const char* help;
    const char* inputs;
  };
  const Sub subs[] = {
      {"entropy", "r-ary entropy of a source", "SOURCE"},
      {"acl", "average codeword length", "SOURCE CODE"},
      {"kraft", "Kraft sum of --lengths or of a code", "[CODE]"},
      {"check-ud", "unique decipherability (Sardinas-Patterson)", "CODE"},
      {"check-prefix", "prefix-freeness", "CODE"},
      {"build-code", "canonical instantaneous code for --lengths", ""},
      {"huffman", "r-ary Huffman code", "SOURCE"},
      {"certify", "sibling-merge certificate for H <= ACL", "SOURCE CODE"},
      {"simulate", "empirical ACL over a sampled stream", "SOURCE CODE"},
      {"fuzz", "randomized theorem and inequality checks", ""},
      {"check-ineq", "closing inequalities for --probs", ""},
  };
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    if (*s.inputs) sub->add_option("inputs", cfg.inputs, s.inputs);
    sub->callback([&cfg, name = s.name] { cfg.subcommand = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : nct::kExitInputError;
  }
  if (radix) cfg.radix = radix;
  cfg.mode = machine ? nct::OutputMode::Machine : nct::OutputMode::Human;
  return nct::dispatch(cfg, std::cout, std::cerr);
}
