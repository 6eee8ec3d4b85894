#include "nct/decipherability.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "nct/error.hpp"

namespace nct {

namespace {

using Digits = std::vector<std::uint8_t>;

bool has_lambda_with_others(const std::vector<Codeword>& pool) {
  return pool.size() > 1 &&
         std::any_of(pool.begin(), pool.end(), [](const Codeword& w) { return w.empty(); });
}

bool starts_with(const Digits& s, const Digits& prefix) {
  return prefix.size() <= s.size() && std::equal(prefix.begin(), prefix.end(), s.begin());
}

Digits tail(const Digits& s, std::size_t from) { return Digits(s.begin() + from, s.end()); }

}  // namespace

bool is_prefix_free(const Code& code) {
  auto pool = code.pooled();
  std::sort(pool.begin(), pool.end());
  // In lexicographic order a word prefixing any other prefixes its successor.
  for (std::size_t i = 0; i + 1 < pool.size(); ++i) {
    if (pool[i].is_prefix_of(pool[i + 1])) return false;
  }
  return true;
}

bool is_uniquely_decipherable(const Code& code) {
  if (!code.is_single_valued()) {
    throw Error(ErrorCode::UnsupportedMultiCodeword,
                "Sardinas-Patterson is defined here for one codeword per symbol");
  }
  const auto pool = code.pooled();
  if (pool.size() == 1) return true;
  if (has_lambda_with_others(pool)) return false;

  std::set<Digits> words;
  for (const auto& w : pool) {
    if (!words.insert(w.digits).second) return false;  // singular
  }

  // Dangling suffixes: S1 from pairs of codewords, S(k+1) from S(k) against C.
  std::set<Digits> frontier;
  for (const auto& a : words) {
    for (const auto& b : words) {
      if (a.size() < b.size() && starts_with(b, a)) frontier.insert(tail(b, a.size()));
    }
  }
  std::set<Digits> visited;
  while (!frontier.empty()) {
    std::set<Digits> next;
    for (const auto& s : frontier) {
      if (words.count(s)) return false;
      if (!visited.insert(s).second) continue;
      for (const auto& c : words) {
        if (c.size() < s.size() && starts_with(s, c)) next.insert(tail(s, c.size()));
        if (s.size() < c.size() && starts_with(c, s)) next.insert(tail(c, s.size()));
      }
    }
    std::erase_if(next, [&](const Digits& d) { return visited.count(d) > 0; });
    frontier = std::move(next);
  }
  return true;
}

std::optional<Codeword> find_ambiguity(const Code& code, std::size_t max_len) {
  const auto pool = code.pooled();
  if (has_lambda_with_others(pool)) return Codeword{};  // the empty string itself
  if (pool.size() == 1) return std::nullopt;

  // by_length[L] maps each concatenation of total length L to its number of
  // factorizations, saturated at 2.
  std::vector<std::map<Digits, int>> by_length(max_len + 1);
  by_length[0][Digits{}] = 1;
  for (std::size_t len = 1; len <= max_len; ++len) {
    auto& level = by_length[len];
    for (const auto& c : pool) {
      if (c.length() > len) continue;
      for (const auto& [prefix, count] : by_length[len - c.length()]) {
        Digits s = prefix;
        s.insert(s.end(), c.digits.begin(), c.digits.end());
        int& slot = level[s];
        slot = std::min(2, slot + count);
      }
    }
    for (const auto& [s, count] : level) {
      if (count >= 2) return Codeword{s};
    }
  }
  return std::nullopt;
}

bool brute_force_ud(const Code& code, std::size_t max_len) {
  return !find_ambiguity(code, max_len).has_value();
}

std::optional<Codeword> find_symbol_ambiguity(const Code& code, std::size_t max_len) {
  const auto pool = code.pooled();
  if (has_lambda_with_others(pool)) return Codeword{};
  if (pool.size() == 1) return std::nullopt;

  struct Parse {
    std::size_t symbol;
    const Codeword* word;
  };
  std::vector<Parse> parses;
  for (std::size_t i = 0; i < code.size(); ++i) {
    for (const auto& w : code.entry(i).codewords) parses.push_back({i, &w});
  }

  // Distinct decodings per string, at most two kept.
  using Decodings = std::vector<std::vector<std::size_t>>;
  std::vector<std::map<Digits, Decodings>> by_length(max_len + 1);
  by_length[0][Digits{}] = Decodings{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    auto& level = by_length[len];
    for (const auto& p : parses) {
      if (p.word->length() > len) continue;
      for (const auto& [prefix, decodings] : by_length[len - p.word->length()]) {
        Digits s = prefix;
        s.insert(s.end(), p.word->digits.begin(), p.word->digits.end());
        auto& slot = level[s];
        for (const auto& d : decodings) {
          if (slot.size() >= 2) break;
          auto seq = d;
          seq.push_back(p.symbol);
          if (std::find(slot.begin(), slot.end(), seq) == slot.end()) slot.push_back(std::move(seq));
        }
      }
    }
    for (const auto& [s, decodings] : level) {
      if (decodings.size() >= 2) return Codeword{s};
    }
  }
  return std::nullopt;
}

bool brute_force_ud_extended(const Code& code, std::size_t max_len) {
  return !find_symbol_ambiguity(code, max_len).has_value();
}

std::vector<Codeword> instantaneous_codewords(std::span<const std::size_t> lengths,
                                              std::uint32_t radix) {
  if (kraft_sum(lengths, radix) > 1) {
    throw Error(ErrorCode::KraftViolated, "Kraft sum exceeds 1");
  }
  std::vector<std::size_t> order(lengths.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lengths[a] < lengths[b]; });

  std::vector<Codeword> out(lengths.size());
  Digits current;
  bool first = true;
  for (std::size_t idx : order) {
    const std::size_t len = lengths[idx];
    if (!first) {
      // Successor of the previous word at its own length; Kraft <= 1 means
      // the carry never runs off the front.
      std::size_t k = current.size();
      while (k > 0) {
        if (++current[k - 1] < radix) break;
        current[k - 1] = 0;
        --k;
      }
    }
    current.resize(len, 0);
    out[idx] = Codeword{current};
    first = false;
  }
  return out;
}

Code construct_instantaneous(std::span<const std::size_t> lengths, std::uint32_t radix,
                             std::span<const std::string> symbols) {
  if (!symbols.empty() && symbols.size() != lengths.size()) {
    throw Error(ErrorCode::InvalidArgument, "symbol list does not match length list");
  }
  auto words = instantaneous_codewords(lengths, radix);
  std::vector<CodeEntry> entries;
  entries.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    entries.push_back({symbols.empty() ? "s" + std::to_string(i + 1) : symbols[i],
                       {std::move(words[i])}});
  }
  return make_code(radix, std::move(entries));
}

Code huffman(const Source& src, std::uint32_t radix) {
  if (radix < 2 || radix > kMaxRadix) {
    throw Error(ErrorCode::InvalidRadix, "huffman needs radix in [2, 36]");
  }
  const std::size_t n = src.size();
  std::size_t padding = 0;
  while ((n + padding - 1) % (radix - 1) != 0) ++padding;

  struct Node {
    Rational weight;
    std::vector<std::size_t> children;  // in digit order
  };
  std::vector<Node> nodes;
  nodes.reserve(2 * (n + padding));
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({src.probability(i), {}});
  for (std::size_t i = 0; i < padding; ++i) nodes.push_back({Rational(0), {}});

  // Node ids are creation order, so (weight, id) realizes the tie-break.
  auto lighter = [&](std::size_t a, std::size_t b) {
    if (nodes[a].weight != nodes[b].weight) return nodes[a].weight < nodes[b].weight;
    return a < b;
  };
  std::set<std::size_t, decltype(lighter)> queue(lighter);
  for (std::size_t i = 0; i < nodes.size(); ++i) queue.insert(i);

  while (queue.size() > 1) {
    Node parent{Rational(0), {}};
    for (std::uint32_t d = 0; d < radix; ++d) {
      const std::size_t id = *queue.begin();
      queue.erase(queue.begin());
      parent.weight += nodes[id].weight;
      parent.children.push_back(id);
    }
    nodes.push_back(std::move(parent));
    queue.insert(nodes.size() - 1);
  }

  std::vector<Codeword> words(n);
  std::vector<std::pair<std::size_t, Digits>> stack{{*queue.begin(), {}}};
  while (!stack.empty()) {
    auto [id, path] = std::move(stack.back());
    stack.pop_back();
    const auto& node = nodes[id];
    if (node.children.empty()) {
      if (id < n) words[id] = Codeword{path};
      continue;
    }
    for (std::size_t d = 0; d < node.children.size(); ++d) {
      Digits child = path;
      child.push_back(static_cast<std::uint8_t>(d));
      stack.emplace_back(node.children[d], std::move(child));
    }
  }

  std::vector<CodeEntry> entries;
  entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) entries.push_back({src.symbol(i), {std::move(words[i])}});
  return make_code(radix, std::move(entries));
}

}  // namespace nct
