#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "typovec/entropy.hpp"
#include "typovec/tree.hpp"

namespace typovec {

inline constexpr int kNoise = -1;

enum class Metric { euclidean, cosine };
Metric parse_metric(std::string_view name);

// Cosine distance is 1 - cos(a, b); two zero vectors are at distance 0, a
// zero vector and a nonzero one at distance 1.
double distance(std::span<const double> a, std::span<const double> b, Metric metric);

// Density-based clustering. A point is core when its closed
// epsilon-neighborhood (self included, distance <= epsilon) holds at least
// min_pts points. Clusters are the connected components of core points;
// a non-core point joins the cluster of its lowest-indexed core neighbor,
// otherwise it is kNoise. Cluster ids are numbered 0, 1, ... in order of
// each cluster's lowest-indexed core point.
std::vector<int> dbscan(std::span<const std::vector<double>> points, double epsilon,
                        std::size_t min_pts, Metric metric = Metric::euclidean);

struct ClusterParams {
  double epsilon = 0.1;
  // min_pts = ceil(fraction * size of the set being clustered)
  double min_samples_fraction = 0.3;
  std::size_t max_depth = 8;
  double epsilon_decay = 0.7;
  Metric metric = Metric::euclidean;

  void validate() const;
};

// ceil(fraction * n), at least 1; guards against 0.3 * 10 rounding up to 4.
std::size_t min_points(double fraction, std::size_t n);

// Recursive DBSCAN. Level 1 clusters all languages with `epsilon`; every
// cluster of two or more members becomes `Cluster_L{level}_{k}` and is
// re-clustered one level down with epsilon * epsilon_decay. Noise points
// and singleton clusters of one call are gathered under a single
// `Unsplit_L{level}_{k}` node. Below level 1, a call that does not split
// its members (one all-inclusive cluster, or all noise) attaches them as
// leaves directly, as does reaching max_depth. k counts Cluster and
// Unsplit nodes separately per level, ordered by smallest member code.
// Vectors must be min-max normalized (every coordinate in [0, 1]).
TypologyTree induce_tree(const VectorSet& vs, const ClusterParams& params = {});

enum class Linkage { single, complete, average, ward };
Linkage parse_linkage(std::string_view name);

// Full binary dendrogram from Euclidean distances. Ward uses the centroid
// form sqrt(2|A||B|/(|A|+|B|)) * |mean(A) - mean(B)|. Equal distances are
// resolved by the lexicographically smallest pair of (smallest member
// code) keys. Internal nodes are named Cluster_L{depth}_{k}, the root Root.
TypologyTree agglomerative_tree(const VectorSet& vs, Linkage linkage);

}  // namespace typovec
