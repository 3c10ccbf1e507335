#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace typovec {

// Rooted tree stored as a node array. Leaves carry language codes; internal
// nodes carry level labels such as `Cluster_L2_1`, `Unsplit_L1_3`, `Root`,
// or whatever a Newick source supplies (possibly empty).
class TypologyTree {
 public:
  using NodeId = std::size_t;

  struct Node {
    std::string label;
    std::vector<NodeId> children;
    std::optional<NodeId> parent;
    // Newick branch length to the parent, if one was given.
    std::optional<double> length;
  };

  TypologyTree() = default;

  // The first node added becomes the root.
  NodeId add_node(std::string label, std::optional<NodeId> parent = std::nullopt,
                  std::optional<double> length = std::nullopt);

  void set_label(NodeId id, std::string label) { nodes_.at(id).label = std::move(label); }
  void set_length(NodeId id, std::optional<double> length) { nodes_.at(id).length = length; }

  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t size() const noexcept { return nodes_.size(); }
  NodeId root() const noexcept { return 0; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  bool is_leaf(NodeId id) const { return nodes_.at(id).children.empty(); }

  std::vector<NodeId> leaves() const;
  // Sorted leaf labels.
  std::vector<std::string> leaf_labels() const;
  std::vector<std::string> leaf_labels_under(NodeId id) const;
  std::optional<NodeId> find_leaf(std::string_view label) const;
  std::size_t depth(NodeId id) const;
  // Smallest leaf label in the subtree, the key for canonical child order.
  std::string min_leaf(NodeId id) const;

  // Throws unless the tree is nonempty, leaf labels are nonempty and unique.
  void validate() const;

  // Copy of the subtree rooted at `id` as a standalone tree.
  TypologyTree subtree(NodeId id) const;

 private:
  std::vector<Node> nodes_;
};

// Newick with optional internal labels and branch lengths, `;`-terminated.
// Single-quoted labels and [bracket comments] are accepted.
TypologyTree parse_newick(std::string_view text);

// Canonical Newick: children ordered by smallest leaf label. Branch lengths
// are written when present. `comment`, if given, is emitted as a leading
// [bracket comment].
std::string write_newick(const TypologyTree& tree, std::string_view comment = {});

// Same tree with children in canonical order.
TypologyTree canonicalize(const TypologyTree& tree);

// Structural equality after canonical ordering (labels included, lengths
// ignored).
bool same_tree(const TypologyTree& a, const TypologyTree& b);

// Restricts the tree to `keep`, dropping emptied subtrees and splicing out
// internal nodes that pruning reduced to a single child.
TypologyTree prune_tree(const TypologyTree& tree, const std::set<std::string>& keep);

// Splices out every internal node with exactly one child.
TypologyTree suppress_unary(const TypologyTree& tree);

// {"label", "depth", "children"} nested objects.
nlohmann::json tree_to_json(const TypologyTree& tree);

}  // namespace typovec
