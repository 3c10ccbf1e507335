#include "typovec/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "typovec/error.hpp"
#include "typovec/io.hpp"
#include "typovec/random.hpp"

namespace typovec {

std::set<Clade> clades(const TypologyTree& tree) {
  std::set<Clade> out;
  if (tree.empty()) return out;
  const std::size_t total = tree.leaf_labels().size();
  for (TypologyTree::NodeId id = 0; id < tree.size(); ++id) {
    if (tree.is_leaf(id)) continue;
    Clade clade = tree.leaf_labels_under(id);
    if (clade.size() > 1 && clade.size() < total) out.insert(std::move(clade));
  }
  return out;
}

void require_same_leaves(const TypologyTree& t1, const TypologyTree& t2) {
  const auto a = t1.leaf_labels();
  const auto b = t2.leaf_labels();
  if (a == b) return;
  std::vector<std::string> only_a;
  std::vector<std::string> only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
  const auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size() && i < 5; ++i) s += (i ? "," : "") + v[i];
    if (v.size() > 5) s += ",...";
    return s.empty() ? std::string("-") : s;
  };
  throw Error(Errc::mismatch, "leaf sets differ (only in first: " + join(only_a) +
                                  "; only in second: " + join(only_b) + ")");
}

namespace {

using NodeId = TypologyTree::NodeId;

// Leaf node ids ordered by label, so that rank i names the same leaf in
// two trees over the same leaf set.
std::vector<NodeId> ranked_leaves(const TypologyTree& tree) {
  std::vector<NodeId> ids = tree.leaves();
  std::sort(ids.begin(), ids.end(),
            [&](NodeId a, NodeId b) { return tree.node(a).label < tree.node(b).label; });
  return ids;
}

void require_same_ranked(const TypologyTree& t1, const std::vector<NodeId>& a, const TypologyTree& t2,
                         const std::vector<NodeId>& b) {
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i) same = t1.node(a[i]).label == t2.node(b[i]).label;
  if (!same) require_same_leaves(t1, t2);
}

// Nontrivial clades as sorted vectors of leaf ranks, sorted and unique.
std::vector<std::vector<std::uint32_t>> rank_clades(const TypologyTree& tree,
                                                    const std::vector<NodeId>& ranked) {
  std::vector<std::vector<std::uint32_t>> members(tree.size());
  for (std::size_t r = 0; r < ranked.size(); ++r) members[ranked[r]].push_back(static_cast<std::uint32_t>(r));
  // Post-order without recursion: children before parents.
  std::vector<NodeId> order;
  order.reserve(tree.size());
  std::vector<NodeId> stack{tree.root()};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    order.push_back(id);
    for (NodeId c : tree.node(id).children) stack.push_back(c);
  }
  std::vector<std::vector<std::uint32_t>> out;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& n = tree.node(*it);
    if (n.children.empty()) continue;
    auto& m = members[*it];
    for (NodeId c : n.children) m.insert(m.end(), members[c].begin(), members[c].end());
    std::sort(m.begin(), m.end());
    if (m.size() > 1 && m.size() < ranked.size()) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Root-to-leaf node path per leaf rank.
std::vector<std::vector<NodeId>> rank_paths(const TypologyTree& tree, const std::vector<NodeId>& ranked) {
  std::vector<std::vector<NodeId>> paths(ranked.size());
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    auto& path = paths[r];
    for (std::optional<NodeId> p = ranked[r]; p; p = tree.node(*p).parent) path.push_back(*p);
    std::reverse(path.begin(), path.end());
  }
  return paths;
}

std::size_t common_depth(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  return i - 1;
}

bool has_unary(const TypologyTree& tree) {
  for (NodeId id = 0; id < tree.size(); ++id)
    if (tree.node(id).children.size() == 1) return true;
  return false;
}

}  // namespace

std::size_t rf_distance(const TypologyTree& t1, const TypologyTree& t2) {
  const auto r1 = ranked_leaves(t1);
  const auto r2 = ranked_leaves(t2);
  require_same_ranked(t1, r1, t2, r2);
  const auto c1 = rank_clades(t1, r1);
  const auto c2 = rank_clades(t2, r2);
  std::size_t common = 0;
  for (auto i = c1.begin(), j = c2.begin(); i != c1.end() && j != c2.end();) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return c1.size() + c2.size() - 2 * common;
}

std::size_t lca_depth(const TypologyTree& tree, std::string_view a, std::string_view b) {
  if (a == b) throw Error(Errc::invalid_argument, "lca_depth needs two distinct leaves");
  const auto la = tree.find_leaf(a);
  const auto lb = tree.find_leaf(b);
  if (!la || !lb) {
    throw Error(Errc::invalid_argument, "unknown leaf '" + std::string(la ? b : a) + "'");
  }
  const auto paths = rank_paths(tree, {*la, *lb});
  return common_depth(paths[0], paths[1]);
}

double lca_mae(const TypologyTree& t1, const TypologyTree& t2, bool collapse_unary) {
  const auto r1 = ranked_leaves(t1);
  const auto r2 = ranked_leaves(t2);
  require_same_ranked(t1, r1, t2, r2);
  if (r1.size() < 2) throw Error(Errc::too_small, "lca_mae needs at least two leaves");
  std::vector<std::vector<NodeId>> pa, pb;
  if (collapse_unary && has_unary(t1)) {
    const auto s = suppress_unary(t1);
    pa = rank_paths(s, ranked_leaves(s));
  } else {
    pa = rank_paths(t1, r1);
  }
  if (collapse_unary && has_unary(t2)) {
    const auto s = suppress_unary(t2);
    pb = rank_paths(s, ranked_leaves(s));
  } else {
    pb = rank_paths(t2, r2);
  }
  const std::size_t n = pa.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto da = static_cast<double>(common_depth(pa[i], pa[j]));
      const auto db = static_cast<double>(common_depth(pb[i], pb[j]));
      sum += std::abs(da - db);
    }
  }
  return sum / static_cast<double>(n * (n - 1) / 2);
}

std::string leaf_set_hash(const TypologyTree& tree) {
  std::string joined;
  for (const auto& label : tree.leaf_labels()) {
    joined += label;
    joined.push_back('\n');
  }
  return io::hex64(fnv1a64(joined));
}

TreeReport compare_trees(const TypologyTree& gold, const TypologyTree& candidate) {
  require_same_leaves(gold, candidate);
  TreeReport report;
  report.rf = rf_distance(gold, candidate);
  report.lca_mae = lca_mae(gold, candidate);
  report.n_leaves = gold.leaf_labels().size();
  report.leaf_set_hash = leaf_set_hash(gold);
  return report;
}

nlohmann::json report_to_json(const TreeReport& report, std::string_view gold,
                              std::string_view candidate) {
  nlohmann::json j;
  j["gold"] = gold;
  j["candidate"] = candidate;
  j["metrics"] = {{"rf", report.rf}, {"lca_mae", report.lca_mae}};
  j["n_leaves"] = report.n_leaves;
  j["leaf_set_hash"] = report.leaf_set_hash;
  return j;
}

std::string report_tsv_line(const TreeReport& report, std::string_view gold,
                            std::string_view candidate) {
  return std::string(gold) + "\t" + std::string(candidate) + "\t" + std::to_string(report.rf) +
         "\t" + io::format_g9(report.lca_mae);
}

}  // namespace typovec
