#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "typovec/cluster.hpp"
#include "typovec/corpus.hpp"
#include "typovec/entropy.hpp"
#include "typovec/lm.hpp"
#include "typovec/tree.hpp"

namespace typovec {

// First-order character Markov chain over a shared alphabet.
struct MarkovSource {
  std::size_t alphabet_size = 0;
  std::vector<double> transitions;  // row-major, row = previous symbol

  const double* row(std::size_t from) const { return transitions.data() + from * alphabet_size; }
};

// Mean over rows of the total variation distance between transition rows.
double tv_distance(const MarkovSource& a, const MarkovSource& b);

struct PlantedWorld {
  TypologyTree tree;
  std::vector<char32_t> alphabet;
  std::map<std::string, MarkovSource> sources;  // one per leaf language
  double delta = 0.0;
  double concentration = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr double kDefaultConcentration = 0.3;

// The root's rows are drawn from a symmetric Dirichlet(concentration).
// Along each edge the child's rows are
//   (1 - d) * parent + d * fresh Dirichlet draw,   d = min(1, delta * length)
// where length is the edge's Newick branch length (1 when absent).
// Leaf labels must be three-letter language codes.
PlantedWorld generate_world(const TypologyTree& planted, std::size_t alphabet_size, double delta,
                            std::uint64_t seed, double concentration = kDefaultConcentration);

// n_chars symbols from the language's chain (uniform start state), as one
// sentence collated into max_chars instances.
Corpus sample_corpus(const PlantedWorld& world, std::string_view lang, std::size_t n_chars,
                     std::uint64_t seed, std::size_t max_chars = kDefaultMaxChars);

struct RecoveryParams {
  std::vector<std::uint64_t> seeds;
  std::size_t chars_per_language = 200'000;
  std::size_t alphabet_size = 64;
  double delta = 0.3;
  double concentration = kDefaultConcentration;
  SplitRatios ratios;
  // Synthetic corpora hold a few hundred instances; the 1,500 floor used for
  // real corpora would reject them.
  std::size_t split_floor = 1;
  NGramConfig lm;
  ClusterParams cluster;
  std::size_t jobs = 1;
};

struct RecoveryRun {
  std::uint64_t seed = 0;
  std::size_t rf = 0;
  double lca_mae = 0.0;
  bool diagonal_dominant = false;
  EntropyMatrix matrix;
  TypologyTree induced;
};

// Per seed: sample corpora, split, train tokenizers (byte fallback on) and
// n-gram models on train, build the matrix on test, take min-max normalized
// row vectors, induce a tree and score it against the planted tree.
RecoveryRun recovery_run(const TypologyTree& planted, const RecoveryParams& params,
                         std::uint64_t seed);
std::vector<RecoveryRun> recovery_experiment(const TypologyTree& planted,
                                             const RecoveryParams& params);

// argmin of every row is its diagonal entry (strictly).
bool diagonal_dominant(const EntropyMatrix& matrix);

}  // namespace typovec
