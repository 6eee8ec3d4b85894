#include "nct/code_tree.hpp"

#include <algorithm>
#include <functional>

#include "nct/decipherability.hpp"
#include "nct/error.hpp"

namespace nct {

std::size_t CodeTree::Node::child_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(children.begin(), children.end(), [](std::size_t c) { return c != npos; }));
}

std::vector<std::size_t> CodeTree::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_leaf()) out.push_back(i);
  }
  std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
    return nodes_[a].leaf->order < nodes_[b].leaf->order;
  });
  return out;
}

std::size_t CodeTree::leaf_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf(); }));
}

std::size_t CodeTree::internal_count() const noexcept { return nodes_.size() - leaf_count(); }

bool CodeTree::has_probabilities() const noexcept {
  return std::all_of(nodes_.begin(), nodes_.end(), [](const Node& n) {
    return !n.is_leaf() || n.leaf->probability.has_value();
  });
}

bool CodeTree::is_compact() const noexcept {
  return std::none_of(nodes_.begin(), nodes_.end(),
                      [](const Node& n) { return !n.is_leaf() && n.child_count() == 1; });
}

Rational CodeTree::acl_exact() const {
  if (!has_probabilities()) throw Error(ErrorCode::InvalidArgument, "tree leaves carry no probabilities");
  Rational total = 0;
  for (const auto& n : nodes_) {
    if (n.is_leaf()) total += *n.leaf->probability * static_cast<unsigned long>(n.path.length());
  }
  return total;
}

std::vector<Rational> CodeTree::leaf_probabilities() const {
  if (!has_probabilities()) throw Error(ErrorCode::InvalidArgument, "tree leaves carry no probabilities");
  std::vector<Rational> out;
  for (auto id : leaves()) out.push_back(*nodes_[id].leaf->probability);
  return out;
}

CodeTree CodeTree::from_leaves(std::uint32_t radix,
                               std::vector<std::pair<Codeword, LeafPayload>> leaves) {
  if (radix < 1 || radix > kMaxRadix) throw Error(ErrorCode::InvalidRadix, "tree radix out of range");
  if (leaves.empty()) throw Error(ErrorCode::InvalidArgument, "tree needs at least one leaf");
  CodeTree tree;
  tree.radix_ = radix;
  tree.nodes_.push_back(Node{Codeword{}, npos, std::vector<std::size_t>(radix, npos), std::nullopt});
  for (auto& [word, payload] : leaves) {
    std::size_t at = 0;
    for (std::size_t k = 0; k < word.length(); ++k) {
      if (tree.nodes_[at].is_leaf()) throw Error(ErrorCode::NotPrefixFree, "codeword below a leaf");
      const auto d = word.digits[k];
      if (d >= radix) throw Error(ErrorCode::InvalidCodeword, "digit not below radix");
      std::size_t next = tree.nodes_[at].children[d];
      if (next == npos) {
        next = tree.nodes_.size();
        Codeword path{std::vector<std::uint8_t>(word.digits.begin(), word.digits.begin() + k + 1)};
        tree.nodes_.push_back(Node{std::move(path), at, std::vector<std::size_t>(radix, npos), std::nullopt});
        tree.nodes_[at].children[d] = next;
      }
      at = next;
    }
    if (tree.nodes_[at].is_leaf() || tree.nodes_[at].child_count() > 0) {
      throw Error(ErrorCode::NotPrefixFree, "codeword " + word.str() + " collides with another");
    }
    tree.nodes_[at].leaf = std::move(payload);
  }
  return tree;
}

CodeTree to_tree(const Code& code, const std::optional<Source>& src) {
  if (!code.is_single_valued()) {
    throw Error(ErrorCode::UnsupportedMultiCodeword, "tree view needs one codeword per symbol");
  }
  if (!is_prefix_free(code)) throw Error(ErrorCode::NotPrefixFree, "code is not prefix-free");
  std::vector<std::pair<Codeword, LeafPayload>> leaves;
  leaves.reserve(code.size());
  for (std::size_t i = 0; i < code.size(); ++i) {
    const auto& e = code.entry(i);
    LeafPayload payload{e.symbol, std::nullopt, i};
    if (src) {
      const std::size_t at = src->index_of(e.symbol);
      if (at == src->size()) throw Error(ErrorCode::MissingSymbol, "source has no symbol '" + e.symbol + "'");
      payload.probability = src->probability(at);
      payload.order = at;
    }
    leaves.emplace_back(e.codewords.front(), std::move(payload));
  }
  if (src && src->size() != code.size()) {
    throw Error(ErrorCode::MissingSymbol, "code does not cover every source symbol");
  }
  return CodeTree::from_leaves(code.radix(), std::move(leaves));
}

Code from_tree(const CodeTree& tree) {
  std::vector<CodeEntry> entries;
  for (auto id : tree.leaves()) {
    const auto& n = tree.node(id);
    entries.push_back({n.leaf->symbol, {n.path}});
  }
  return make_code(tree.radix(), std::move(entries));
}

CodeTree compact_standalone(const CodeTree& tree) {
  const auto& nodes = tree.nodes();
  auto collapse = [&](std::size_t id) {
    while (!nodes[id].is_leaf() && nodes[id].child_count() == 1) {
      for (auto c : nodes[id].children) {
        if (c != CodeTree::npos) {
          id = c;
          break;
        }
      }
    }
    return id;
  };

  std::vector<std::pair<Codeword, LeafPayload>> leaves;
  std::function<void(std::size_t, const Codeword&)> emit = [&](std::size_t id, const Codeword& at) {
    const std::size_t target = collapse(id);
    const auto& n = nodes[target];
    if (n.is_leaf()) {
      leaves.emplace_back(at, *n.leaf);
      return;
    }
    for (std::size_t d = 0; d < n.children.size(); ++d) {
      if (n.children[d] == CodeTree::npos) continue;
      Codeword child = at;
      child.digits.push_back(static_cast<std::uint8_t>(d));
      emit(n.children[d], child);
    }
  };
  emit(0, Codeword{});
  return CodeTree::from_leaves(tree.radix(), std::move(leaves));
}

SiblingGroup find_sibling_group(const CodeTree& tree) {
  if (tree.leaf_count() < 2) throw Error(ErrorCode::TreeTooSmall, "a sibling group needs two leaves");
  if (!tree.is_compact()) throw Error(ErrorCode::NotCompact, "tree has a standalone child");
  const auto& nodes = tree.nodes();
  std::size_t depth = 0;
  for (const auto& n : nodes) {
    if (n.is_leaf()) depth = std::max(depth, n.path.length());
  }
  std::size_t best = CodeTree::npos;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.is_leaf() || n.path.length() + 1 != depth) continue;
    if (best == CodeTree::npos || n.path < nodes[best].path) best = i;
  }
  SiblingGroup group{nodes[best].path, {}};
  for (auto c : nodes[best].children) {
    if (c == CodeTree::npos) continue;
    if (!nodes[c].is_leaf()) throw Error(ErrorCode::InvalidGroup, "deepest parent has an internal child");
    group.members.push_back(c);
  }
  return group;
}

TreeStats tree_stats(const CodeTree& tree) {
  TreeStats stats;
  stats.leaves = tree.leaf_count();
  stats.internal = tree.internal_count();
  stats.is_full = std::all_of(tree.nodes().begin(), tree.nodes().end(), [&](const CodeTree::Node& n) {
    return n.is_leaf() || n.child_count() == tree.radix();
  });
  return stats;
}

std::string dump_tree(const CodeTree& tree) {
  std::string out;
  std::function<void(std::size_t)> walk = [&](std::size_t id) {
    const auto& n = tree.node(id);
    out.append(2 * n.path.length(), ' ');
    out += n.path.str();
    if (n.is_leaf()) {
      out += ' ';
      out += n.leaf->symbol;
      if (n.leaf->probability) out += " p=" + to_fraction_string(*n.leaf->probability);
    }
    out += '\n';
    for (auto c : n.children) {
      if (c != CodeTree::npos) walk(c);
    }
  };
  walk(0);
  return out;
}

}  // namespace nct
