#include "typovec/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "typovec/error.hpp"

namespace typovec {

Metric parse_metric(std::string_view name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "cosine") return Metric::cosine;
  throw Error(Errc::config, "unknown metric '" + std::string(name) + "'");
}

double distance(std::span<const double> a, std::span<const double> b, Metric metric) {
  if (a.size() != b.size()) throw Error(Errc::mismatch, "points have different dimensions");
  if (metric == Metric::euclidean) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      s += d * d;
    }
    return std::sqrt(s);
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return na == nb ? 0.0 : 1.0;
  return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<int> dbscan(std::span<const std::vector<double>> points, double epsilon,
                        std::size_t min_pts, Metric metric) {
  if (points.empty()) throw Error(Errc::empty_input, "dbscan needs at least one point");
  if (!(epsilon > 0.0)) throw Error(Errc::invalid_argument, "dbscan epsilon must be > 0");
  if (min_pts == 0) throw Error(Errc::invalid_argument, "dbscan min_pts must be >= 1");
  const std::size_t n = points.size();

  std::vector<std::vector<std::size_t>> neighbors(n);
  for (std::size_t i = 0; i < n; ++i) {
    neighbors[i].push_back(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(points[i], points[j], metric) <= epsilon) {
        neighbors[i].push_back(j);
        neighbors[j].push_back(i);
      }
    }
  }
  for (auto& nb : neighbors) std::sort(nb.begin(), nb.end());
  std::vector<bool> core(n);
  for (std::size_t i = 0; i < n; ++i) core[i] = neighbors[i].size() >= min_pts;

  std::vector<int> labels(n, kNoise);
  int next = 0;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (!core[seed] || labels[seed] != kNoise) continue;
    const int id = next++;
    std::vector<std::size_t> frontier{seed};
    labels[seed] = id;
    while (!frontier.empty()) {
      const std::size_t p = frontier.back();
      frontier.pop_back();
      for (std::size_t q : neighbors[p]) {
        if (core[q] && labels[q] == kNoise) {
          labels[q] = id;
          frontier.push_back(q);
        }
      }
    }
  }
  // Border points: neighbors are sorted, so the first core one is the
  // lowest-indexed.
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) continue;
    for (std::size_t q : neighbors[i]) {
      if (core[q]) {
        labels[i] = labels[q];
        break;
      }
    }
  }
  return labels;
}

void ClusterParams::validate() const {
  if (!(epsilon > 0.0)) throw Error(Errc::invalid_argument, "epsilon must be > 0");
  if (!(min_samples_fraction > 0.0 && min_samples_fraction <= 1.0)) {
    throw Error(Errc::invalid_argument, "min_samples fraction must be in (0, 1]");
  }
  if (!(epsilon_decay > 0.0 && epsilon_decay <= 1.0)) {
    throw Error(Errc::invalid_argument, "epsilon_decay must be in (0, 1]");
  }
  if (max_depth == 0) throw Error(Errc::invalid_argument, "max_depth must be >= 1");
}

std::size_t min_points(double fraction, std::size_t n) {
  const double raw = fraction * static_cast<double>(n);
  const auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::max<std::size_t>(1, k);
}

namespace {

enum class Kind { root, cluster, unsplit, leaf };

struct Proto {
  Kind kind = Kind::leaf;
  std::size_t level = 0;
  std::size_t leaf = 0;             // language index, for leaves
  std::size_t min_member = 0;       // smallest language index below
  std::vector<std::size_t> children;
};

// Language indices sorted by code so that index order is code order.
std::vector<std::size_t> code_order(const VectorSet& vs) {
  std::vector<std::size_t> order(vs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return vs.langs[a] < vs.langs[b]; });
  return order;
}

// Turns the proto tree into a TypologyTree, numbering labelled nodes per
// (kind, level) in order of their smallest member.
TypologyTree materialize(const std::vector<Proto>& protos, const std::vector<std::string>& codes) {
  std::map<std::pair<Kind, std::size_t>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < protos.size(); ++i) {
    if (protos[i].kind == Kind::cluster || protos[i].kind == Kind::unsplit) {
      groups[{protos[i].kind, protos[i].level}].push_back(i);
    }
  }
  std::vector<std::string> names(protos.size());
  for (auto& [key, ids] : groups) {
    std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
      return protos[a].min_member < protos[b].min_member;
    });
    const std::string prefix = key.first == Kind::cluster ? "Cluster_L" : "Unsplit_L";
    for (std::size_t k = 0; k < ids.size(); ++k) {
      names[ids[k]] = prefix + std::to_string(key.second) + "_" + std::to_string(k + 1);
    }
  }
  TypologyTree tree;
  std::function<void(std::size_t, std::optional<TypologyTree::NodeId>)> emit =
      [&](std::size_t p, std::optional<TypologyTree::NodeId> parent) {
        const Proto& proto = protos[p];
        std::string label = proto.kind == Kind::root   ? "Root"
                            : proto.kind == Kind::leaf ? codes[proto.leaf]
                                                       : names[p];
        const auto id = tree.add_node(std::move(label), parent);
        for (std::size_t c : proto.children) emit(c, id);
      };
  emit(0, std::nullopt);
  return tree;
}

}  // namespace

TypologyTree induce_tree(const VectorSet& vs, const ClusterParams& params) {
  params.validate();
  vs.validate();
  if (vs.size() < 2) throw Error(Errc::too_small, "tree induction needs at least two languages");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (double x : vs.vectors[i]) {
      if (x < 0.0 || x > 1.0) {
        throw Error(Errc::invalid_argument,
                    "vectors must be min-max normalized before tree induction (" + vs.langs[i] +
                        " has a coordinate outside [0, 1])");
      }
    }
  }
  // Work in code order: index i below is the i-th smallest language code.
  const auto order = code_order(vs);
  std::vector<std::string> codes;
  std::vector<std::vector<double>> points;
  for (std::size_t i : order) {
    codes.push_back(vs.langs[i]);
    points.push_back(vs.vectors[i]);
  }

  std::vector<Proto> protos(1);
  protos[0].kind = Kind::root;
  const auto add = [&](std::size_t parent, Proto proto) {
    protos.push_back(std::move(proto));
    protos[parent].children.push_back(protos.size() - 1);
    return protos.size() - 1;
  };
  const auto attach_leaves = [&](std::size_t parent, const std::vector<std::size_t>& members) {
    for (std::size_t m : members) add(parent, Proto{Kind::leaf, 0, m, m, {}});
  };

  std::function<void(std::size_t, const std::vector<std::size_t>&, std::size_t, double)> build =
      [&](std::size_t parent, const std::vector<std::size_t>& members, std::size_t level, double eps) {
        if (level > params.max_depth) {
          attach_leaves(parent, members);
          return;
        }
        std::vector<std::vector<double>> sub;
        for (std::size_t m : members) sub.push_back(points[m]);
        const auto labels =
            dbscan(sub, eps, min_points(params.min_samples_fraction, members.size()), params.metric);

        std::map<int, std::vector<std::size_t>> clusters;
        std::vector<std::size_t> unsplit;
        for (std::size_t i = 0; i < members.size(); ++i) {
          if (labels[i] == kNoise) {
            unsplit.push_back(members[i]);
          } else {
            clusters[labels[i]].push_back(members[i]);
          }
        }
        for (auto it = clusters.begin(); it != clusters.end();) {
          if (it->second.size() < 2) {
            unsplit.push_back(it->second.front());
            it = clusters.erase(it);
          } else {
            ++it;
          }
        }
        std::sort(unsplit.begin(), unsplit.end());

        const bool no_split = (clusters.size() == 1 && unsplit.empty()) || clusters.empty();
        if (level > 1 && no_split) {
          attach_leaves(parent, members);
          return;
        }
        for (auto& [_, cluster] : clusters) {
          const std::size_t node = add(parent, Proto{Kind::cluster, level, 0, cluster.front(), {}});
          build(node, cluster, level + 1, eps * params.epsilon_decay);
        }
        if (!unsplit.empty()) {
          const std::size_t node = add(parent, Proto{Kind::unsplit, level, 0, unsplit.front(), {}});
          attach_leaves(node, unsplit);
        }
      };

  std::vector<std::size_t> all(points.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  build(0, all, 1, params.epsilon);
  return materialize(protos, codes);
}

Linkage parse_linkage(std::string_view name) {
  if (name == "single") return Linkage::single;
  if (name == "complete") return Linkage::complete;
  if (name == "average") return Linkage::average;
  if (name == "ward") return Linkage::ward;
  throw Error(Errc::config, "unknown linkage '" + std::string(name) + "'");
}

TypologyTree agglomerative_tree(const VectorSet& vs, Linkage linkage) {
  vs.validate();
  if (vs.size() < 2) throw Error(Errc::too_small, "agglomerative clustering needs at least two languages");
  const auto order = code_order(vs);
  const std::size_t n = order.size();
  std::vector<std::vector<double>> points;
  std::vector<std::string> codes;
  for (std::size_t i : order) {
    points.push_back(vs.vectors[i]);
    codes.push_back(vs.langs[i]);
  }
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist[i * n + j] = dist[j * n + i] = distance(points[i], points[j], Metric::euclidean);
    }
  }

  struct Active {
    std::vector<std::size_t> members;  // sorted; front() is the tie-break key
    std::size_t proto;
  };
  std::vector<Proto> protos;
  protos.reserve(2 * n);
  std::vector<Active> active;
  for (std::size_t i = 0; i < n; ++i) {
    protos.push_back(Proto{Kind::leaf, 0, i, i, {}});
    active.push_back({{i}, i});
  }

  const auto link = [&](const Active& a, const Active& b) {
    switch (linkage) {
      case Linkage::single: {
        double best = std::numeric_limits<double>::infinity();
        for (auto i : a.members) for (auto j : b.members) best = std::min(best, dist[i * n + j]);
        return best;
      }
      case Linkage::complete: {
        double worst = 0.0;
        for (auto i : a.members) for (auto j : b.members) worst = std::max(worst, dist[i * n + j]);
        return worst;
      }
      case Linkage::average: {
        double sum = 0.0;
        for (auto i : a.members) for (auto j : b.members) sum += dist[i * n + j];
        return sum / static_cast<double>(a.members.size() * b.members.size());
      }
      case Linkage::ward: {
        const std::size_t dim = points[0].size();
        std::vector<double> ca(dim, 0.0), cb(dim, 0.0);
        for (auto i : a.members) for (std::size_t d = 0; d < dim; ++d) ca[d] += points[i][d];
        for (auto j : b.members) for (std::size_t d = 0; d < dim; ++d) cb[d] += points[j][d];
        const double na = static_cast<double>(a.members.size());
        const double nb = static_cast<double>(b.members.size());
        for (std::size_t d = 0; d < dim; ++d) {
          ca[d] /= na;
          cb[d] /= nb;
        }
        return std::sqrt(2.0 * na * nb / (na + nb)) * distance(ca, cb, Metric::euclidean);
      }
    }
    return 0.0;
  };

  while (active.size() > 1) {
    std::size_t best_a = 0;
    std::size_t best_b = 1;
    double best = std::numeric_limits<double>::infinity();
    // `active` stays sorted by smallest member, so scanning pairs in index
    // order visits them in lexicographic key order; strict < keeps the first.
    for (std::size_t a = 0; a < active.size(); ++a) {
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        const double d = link(active[a], active[b]);
        if (d < best) {
          best = d;
          best_a = a;
          best_b = b;
        }
      }
    }
    Proto merged{Kind::cluster, 0, 0, active[best_a].members.front(),
                 {active[best_a].proto, active[best_b].proto}};
    protos.push_back(std::move(merged));
    Active joined;
    std::merge(active[best_a].members.begin(), active[best_a].members.end(),
               active[best_b].members.begin(), active[best_b].members.end(),
               std::back_inserter(joined.members));
    joined.proto = protos.size() - 1;
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_b));
    active[best_a] = std::move(joined);
  }

  // Re-root the proto array at index 0 and assign depth levels.
  const std::size_t top = active.front().proto;
  std::vector<Proto> rooted;
  std::function<std::size_t(std::size_t, std::size_t)> copy = [&](std::size_t p, std::size_t depth) {
    const std::size_t id = rooted.size();
    rooted.push_back(protos[p]);
    rooted[id].level = depth;
    rooted[id].children.clear();
    if (depth == 0) rooted[id].kind = Kind::root;
    for (std::size_t c : protos[p].children) {
      const std::size_t child = copy(c, depth + 1);
      rooted[id].children.push_back(child);
    }
    return id;
  };
  copy(top, 0);
  return materialize(rooted, codes);
}

}  // namespace typovec
