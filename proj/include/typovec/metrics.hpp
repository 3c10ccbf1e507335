#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "typovec/tree.hpp"

namespace typovec {

// Sorted leaf labels below one internal node.
using Clade = std::vector<std::string>;

// Nontrivial clades: one per internal node, excluding singletons and the
// full leaf set.
std::set<Clade> clades(const TypologyTree& tree);

// Rooted, clade-based Robinson-Foulds distance |C(t1) symmetric-difference
// C(t2)|. Throws on differing leaf sets.
std::size_t rf_distance(const TypologyTree& t1, const TypologyTree& t2);

// Depth of the lowest common ancestor of two distinct leaves, root = 0,
// measured on the tree as given.
std::size_t lca_depth(const TypologyTree& tree, std::string_view a, std::string_view b);

// Mean |lca_depth_t1 - lca_depth_t2| over all unordered leaf pairs. Unary
// nodes are spliced out of both trees first unless collapse_unary is false.
double lca_mae(const TypologyTree& t1, const TypologyTree& t2, bool collapse_unary = true);

struct TreeReport {
  std::size_t rf = 0;
  double lca_mae = 0.0;
  std::size_t n_leaves = 0;
  std::string leaf_set_hash;
};

// Throws Error(mismatch) listing the first differing leaves.
void require_same_leaves(const TypologyTree& t1, const TypologyTree& t2);

TreeReport compare_trees(const TypologyTree& gold, const TypologyTree& candidate);

std::string leaf_set_hash(const TypologyTree& tree);

nlohmann::json report_to_json(const TreeReport& report, std::string_view gold,
                              std::string_view candidate);
// `gold<TAB>candidate<TAB>rf<TAB>lca_mae`
std::string report_tsv_line(const TreeReport& report, std::string_view gold,
                            std::string_view candidate);

}  // namespace typovec
