// Independent reference implementations used by the unit and acceptance
// tests. They favour obviousness over speed and share no code with the
// library beyond plain data types.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <bit>
#include <functional>
#include <optional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "typovec/random.hpp"
#include "typovec/tree.hpp"

namespace oracle {

// ---------------------------------------------------------------- n-gram

// Counts every (context, token) pair per order with BOS padding, using a
// plain std::map keyed by id vectors.
struct NaiveNGram {
  std::size_t order;
  double alpha;
  std::size_t vocab;
  std::vector<double> lambdas;
  std::vector<std::map<std::vector<int>, double>> joint;    // index k-1
  std::vector<std::map<std::vector<int>, double>> context;  // index k-1

  NaiveNGram(const std::vector<std::vector<std::uint32_t>>& train, std::size_t vocab_size,
             std::size_t n, double a, std::vector<double> weights = {})
      : order(n), alpha(a), vocab(vocab_size), lambdas(std::move(weights)), joint(n), context(n) {
    if (lambdas.empty()) lambdas.assign(n, 1.0 / static_cast<double>(n));
    for (const auto& seq : train) {
      for (std::size_t t = 0; t < seq.size(); ++t) {
        for (std::size_t k = 1; k <= n; ++k) {
          const auto ctx = history(seq, t, k);
          std::vector<int> full = ctx;
          full.push_back(static_cast<int>(seq[t]));
          joint[k - 1][full] += 1;
          context[k - 1][ctx] += 1;
        }
      }
    }
  }

  std::vector<int> history(const std::vector<std::uint32_t>& seq, std::size_t t, std::size_t k) const {
    std::vector<int> ctx;
    for (std::size_t back = k - 1; back >= 1; --back) {
      const long pos = static_cast<long>(t) - static_cast<long>(back);
      ctx.push_back(pos < 0 ? static_cast<int>(vocab) : static_cast<int>(seq[static_cast<std::size_t>(pos)]));
    }
    return ctx;
  }

  double prob(const std::vector<std::uint32_t>& seq, std::size_t t) const {
    double p = 0.0;
    for (std::size_t k = 1; k <= order; ++k) {
      const auto ctx = history(seq, t, k);
      std::vector<int> full = ctx;
      full.push_back(static_cast<int>(seq[t]));
      const auto j = joint[k - 1].find(full);
      const auto c = context[k - 1].find(ctx);
      const double cj = j == joint[k - 1].end() ? 0.0 : j->second;
      const double cc = c == context[k - 1].end() ? 0.0 : c->second;
      p += lambdas[k - 1] * (cj + alpha) / (cc + alpha * static_cast<double>(vocab));
    }
    return p;
  }

  double cross_entropy(const std::vector<std::vector<std::uint32_t>>& eval) const {
    double nll = 0.0;
    double tokens = 0.0;
    for (const auto& seq : eval) {
      for (std::size_t t = 0; t < seq.size(); ++t) {
        nll -= std::log(prob(seq, t));
        tokens += 1.0;
      }
    }
    return nll / tokens;
  }
};

// ---------------------------------------------------------------- DBSCAN

// Partition as a set of sets (cluster members), with noise reported apart.
struct Partition {
  std::set<std::set<std::size_t>> clusters;
  std::set<std::size_t> noise;
  friend bool operator==(const Partition&, const Partition&) = default;
};

inline Partition partition_of(const std::vector<int>& labels) {
  std::map<int, std::set<std::size_t>> groups;
  Partition out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) out.noise.insert(i);
    else groups[labels[i]].insert(i);
  }
  for (auto& [id, members] : groups) out.clusters.insert(members);
  return out;
}

// Core points: at least min_pts points (self included) within eps. Clusters
// are the connected components of the core ε-graph, computed by transitive
// closure of the adjacency matrix. A border point joins the component of its
// lowest-indexed core neighbour; everything else is noise.
inline Partition brute_dbscan(const std::vector<std::vector<double>>& pts, double eps, std::size_t min_pts) {
  const std::size_t n = pts.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t d = 0; d < pts[i].size(); ++d) s += (pts[i][d] - pts[j][d]) * (pts[i][d] - pts[j][d]);
      adj[i][j] = std::sqrt(s) <= eps;
    }
  }
  std::vector<bool> core(n);
  for (std::size_t i = 0; i < n; ++i)
    core[i] = static_cast<std::size_t>(std::count(adj[i].begin(), adj[i].end(), true)) >= min_pts;

  // reach[i][j]: i and j are cores joined by a chain of core-core edges.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) reach[i][j] = core[i] && core[j] && adj[i][j];
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;

  std::vector<std::set<std::size_t>> comp(n);
  for (std::size_t i = 0; i < n; ++i)
    if (core[i])
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][j]) comp[i].insert(j);

  std::vector<std::set<std::size_t>> members(n);  // keyed by smallest core of the component
  Partition out;
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) {
      members[*comp[i].begin()].insert(i);
      continue;
    }
    bool attached = false;
    for (std::size_t j = 0; j < n && !attached; ++j) {
      if (core[j] && adj[i][j]) {
        members[*comp[j].begin()].insert(i);
        attached = true;
      }
    }
    if (!attached) out.noise.insert(i);
  }
  for (auto& m : members)
    if (!m.empty()) out.clusters.insert(m);
  return out;
}

// ---------------------------------------------------------------- trees

// Rooted tree over leaves 0..n-1 with no unary nodes, as a parent array.
// Nodes 0..n-1 are the leaves; parent[root] == -1.
struct ShapeTree {
  std::vector<int> parent;
  int n_leaves = 0;
};

// Every rooted leaf-labelled tree with n leaves and no unary nodes, each
// exactly once: leaf k is added to a tree on leaves 0..k-1 either as a new
// child of an existing internal node or by subdividing an edge (including
// a new root above the old one).
inline std::vector<ShapeTree> all_trees(int n) {
  std::vector<ShapeTree> out;
  if (n < 1) return out;
  std::function<void(ShapeTree&, int)> grow = [&](ShapeTree& t, int k) {
    if (k == n) {
      out.push_back(t);
      return;
    }
    // Leaves occupy ids 0..k-1 so far; internal nodes follow from id n.
    const int size = static_cast<int>(t.parent.size());
    for (int v = 0; v < size; ++v) {
      if (t.parent[v] == -2) continue;  // unused leaf slot
      const bool internal = v >= n;
      if (internal) {
        ShapeTree u = t;
        u.parent[k] = v;
        grow(u, k + 1);
      }
      // Subdivide the edge above v.
      ShapeTree u = t;
      const int w = static_cast<int>(u.parent.size());
      u.parent.push_back(u.parent[v]);
      u.parent[v] = w;
      u.parent[k] = w;
      grow(u, k + 1);
    }
  };
  ShapeTree start;
  start.n_leaves = n;
  start.parent.assign(static_cast<std::size_t>(n), -2);
  start.parent[0] = -1;
  if (n == 1) {
    out.push_back(start);
    return out;
  }
  grow(start, 1);
  return out;
}

inline std::string leaf_name(int i) { return std::string("l") + static_cast<char>('a' + i) + "x"; }

inline typovec::TypologyTree to_typology(const ShapeTree& t) {
  typovec::TypologyTree out;
  const int m = static_cast<int>(t.parent.size());
  int root = -1;
  for (int v = 0; v < m; ++v)
    if (t.parent[v] == -1) root = v;
  std::function<void(int, std::optional<std::size_t>)> add = [&](int v, std::optional<std::size_t> parent) {
    const auto id = out.add_node(v < t.n_leaves ? leaf_name(v) : std::string(), parent);
    for (int c = 0; c < m; ++c)
      if (t.parent[c] == v) add(c, id);
  };
  add(root, std::nullopt);
  return out;
}

// Leaf bitmask under every internal node except the root.
inline std::set<std::uint32_t> clade_masks(const ShapeTree& t) {
  const int m = static_cast<int>(t.parent.size());
  std::vector<std::uint32_t> mask(static_cast<std::size_t>(m), 0);
  for (int leaf = 0; leaf < t.n_leaves; ++leaf)
    for (int v = leaf; v != -1; v = t.parent[v]) mask[v] |= 1u << leaf;
  const std::uint32_t full = (1u << t.n_leaves) - 1;
  std::set<std::uint32_t> out;
  for (int v = t.n_leaves; v < m; ++v)
    if (std::popcount(mask[v]) > 1 && mask[v] != full) out.insert(mask[v]);
  return out;
}

inline std::size_t rf_masks(const std::set<std::uint32_t>& a, const std::set<std::uint32_t>& b) {
  std::size_t d = 0;
  for (auto x : a) d += !b.count(x);
  for (auto x : b) d += !a.count(x);
  return d;
}

inline int naive_depth(const ShapeTree& t, int v) {
  int d = 0;
  while (t.parent[v] != -1) {
    v = t.parent[v];
    ++d;
  }
  return d;
}

// Depth of the deepest node that is an ancestor of both leaves.
inline int naive_lca_depth(const ShapeTree& t, int a, int b) {
  std::set<int> anc;
  for (int v = a; v != -1; v = t.parent[v]) anc.insert(v);
  int best = 0;
  for (int v = b; v != -1; v = t.parent[v])
    if (anc.count(v)) best = std::max(best, naive_depth(t, v));
  return best;
}

inline double naive_lca_mae(const ShapeTree& x, const ShapeTree& y) {
  double sum = 0.0;
  int pairs = 0;
  for (int a = 0; a < x.n_leaves; ++a)
    for (int b = a + 1; b < x.n_leaves; ++b) {
      sum += std::abs(naive_lca_depth(x, a, b) - naive_lca_depth(y, a, b));
      ++pairs;
    }
  return sum / pairs;
}

// naive_lca_depth for every leaf pair a < b, in row-major order.
inline std::vector<int> naive_lca_table(const ShapeTree& t) {
  std::vector<int> out;
  for (int a = 0; a < t.n_leaves; ++a)
    for (int b = a + 1; b < t.n_leaves; ++b) out.push_back(naive_lca_depth(t, a, b));
  return out;
}

// ---------------------------------------------------------------- text

// Random valid UTF-8 drawing from ASCII, Latin, Greek, Cyrillic, CJK,
// emoji and a few other planes, avoiding surrogates.
inline std::string random_utf8(typovec::Rng& rng, std::size_t max_len) {
  static const std::vector<std::pair<char32_t, char32_t>> ranges = {
      {0x20, 0x7e},     {0x00, 0x1f},       {0xa0, 0x17f},   {0x370, 0x3ff},
      {0x400, 0x4ff},   {0x900, 0x97f},     {0xe00, 0xe7f},  {0x4e00, 0x9fff},
      {0xac00, 0xd7a3}, {0xe000, 0xf8ff},   {0xfff0, 0xfffd}, {0x1f300, 0x1faff},
      {0x10000, 0x1ffff}, {0x100000, 0x10ffff}};
  const std::size_t len = rng.below(max_len + 1);
  std::string out;
  for (std::size_t i = 0; i < len; ++i) {
    const auto& [lo, hi] = ranges[rng.below(ranges.size())];
    char32_t cp = static_cast<char32_t>(lo + rng.below(hi - lo + 1));
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
      out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
  }
  return out;
}

}  // namespace oracle
