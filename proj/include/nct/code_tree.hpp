#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nct/code.hpp"
#include "nct/rational.hpp"
#include "nct/source.hpp"

namespace nct {

/// Payload of a leaf: the symbol it encodes.
struct LeafPayload {
  std::string symbol;
  std::optional<Rational> probability;
  std::size_t order = 0;  // position of the symbol when converting back to a Code
};

/// r-ary code tree. Node 0 is the root; the digit path from the root to a
/// leaf is that leaf's codeword, so leaves are exactly the codewords and no
/// internal node is one.
class CodeTree {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Node {
    Codeword path;
    std::size_t parent = npos;
    std::vector<std::size_t> children;  // radix slots, npos when absent
    std::optional<LeafPayload> leaf;

    [[nodiscard]] bool is_leaf() const noexcept { return leaf.has_value(); }
    [[nodiscard]] std::size_t child_count() const noexcept;
  };

  [[nodiscard]] std::uint32_t radix() const noexcept { return radix_; }
  [[nodiscard]] const std::vector<Node>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] const Node& node(std::size_t id) const { return nodes_.at(id); }
  [[nodiscard]] const Node& root() const { return nodes_.front(); }

  /// Leaf ids ordered by payload order.
  [[nodiscard]] std::vector<std::size_t> leaves() const;
  [[nodiscard]] std::size_t leaf_count() const noexcept;
  [[nodiscard]] std::size_t internal_count() const noexcept;
  [[nodiscard]] bool has_probabilities() const noexcept;
  /// No internal node (root included) with exactly one child.
  [[nodiscard]] bool is_compact() const noexcept;

  /// Sum of p * depth over leaves; throws InvalidArgument without probabilities.
  [[nodiscard]] Rational acl_exact() const;
  [[nodiscard]] std::vector<Rational> leaf_probabilities() const;

  /// Builds a tree from (codeword, payload) pairs; throws NotPrefixFree.
  static CodeTree from_leaves(std::uint32_t radix,
                              std::vector<std::pair<Codeword, LeafPayload>> leaves);

 private:
  std::uint32_t radix_ = 2;
  std::vector<Node> nodes_;
};

/// Correspondence between prefix-free single-valued codes and trees. When
/// `src` is given every leaf carries its probability and orders follow the
/// source; otherwise orders follow the code. Errors: NotPrefixFree,
/// UnsupportedMultiCodeword, MissingSymbol.
CodeTree to_tree(const Code& code, const std::optional<Source>& src = std::nullopt);
Code from_tree(const CodeTree& tree);

/// Contracts every internal node with a single child into that child until
/// none remain. The one-leaf tree is already compact (its root is the leaf).
CodeTree compact_standalone(const CodeTree& tree);

struct SiblingGroup {
  Codeword parent;                    // x_red
  std::vector<std::size_t> members;   // leaf node ids, in digit order
  std::size_t size() const noexcept { return members.size(); }
};

/// The sibling leaves under the lexicographically least parent among those at
/// maximum leaf depth. Errors: TreeTooSmall (one leaf), NotCompact.
SiblingGroup find_sibling_group(const CodeTree& tree);

struct TreeStats {
  std::size_t leaves = 0;
  std::size_t internal = 0;  // z
  bool is_full = false;      // every internal node has r children
};

TreeStats tree_stats(const CodeTree& tree);

/// Indented text, one node per line: `<digit-path> [symbol p=a/b]`, with the
/// root's path shown as `-`.
std::string dump_tree(const CodeTree& tree);

}  // namespace nct
