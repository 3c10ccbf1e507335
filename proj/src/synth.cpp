#include "typovec/synth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>

#include "typovec/chartok.hpp"
#include "typovec/error.hpp"
#include "typovec/metrics.hpp"
#include "typovec/parallel.hpp"
#include "typovec/random.hpp"
#include "typovec/utf8.hpp"

namespace typovec {
namespace {

std::vector<char32_t> make_alphabet(std::size_t size) {
  std::vector<char32_t> out;
  for (char32_t c = U'a'; c <= U'z' && out.size() < size; ++c) out.push_back(c);
  // Greek, then Cyrillic lowercase for larger alphabets.
  for (char32_t c = 0x3B1; c <= 0x3C9 && out.size() < size; ++c) out.push_back(c);
  for (char32_t c = 0x430; c <= 0x44F && out.size() < size; ++c) out.push_back(c);
  if (out.size() < size) throw Error(Errc::invalid_argument, "alphabet_size too large");
  return out;
}

std::vector<double> dirichlet_rows(std::size_t k, double concentration, Rng& rng) {
  std::vector<double> rows(k * k);
  for (std::size_t r = 0; r < k; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      double g = rng.gamma(concentration);
      // keep every transition strictly positive
      g = std::max(g, 1e-300);
      rows[r * k + c] = g;
      sum += g;
    }
    for (std::size_t c = 0; c < k; ++c) rows[r * k + c] /= sum;
  }
  return rows;
}

}  // namespace

double tv_distance(const MarkovSource& a, const MarkovSource& b) {
  if (a.alphabet_size != b.alphabet_size) throw Error(Errc::mismatch, "sources use different alphabets");
  const std::size_t k = a.alphabet_size;
  double total = 0.0;
  for (std::size_t r = 0; r < k; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < k; ++c) row += std::abs(a.row(r)[c] - b.row(r)[c]);
    total += 0.5 * row;
  }
  return total / static_cast<double>(k);
}

PlantedWorld generate_world(const TypologyTree& planted, std::size_t alphabet_size, double delta,
                            std::uint64_t seed, double concentration) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw Error(Errc::invalid_argument, "delta must be in [0, 1]");
  if (alphabet_size < 2) throw Error(Errc::invalid_argument, "alphabet_size must be >= 2");
  if (!(concentration > 0.0)) throw Error(Errc::invalid_argument, "concentration must be > 0");
  try {
    planted.validate();
    for (const auto& label : planted.leaf_labels()) validate_lang_code(label);
  } catch (const Error& e) {
    throw Error(Errc::invalid_argument, std::string("malformed planted tree: ") + e.what());
  }
  if (planted.leaf_labels().size() < 2) {
    throw Error(Errc::invalid_argument, "malformed planted tree: needs at least two leaves");
  }

  PlantedWorld world;
  world.tree = canonicalize(planted);
  world.alphabet = make_alphabet(alphabet_size);
  world.delta = delta;
  world.concentration = concentration;
  world.seed = seed;

  Rng rng(derive_seed(seed, "world"));
  const std::size_t k = alphabet_size;
  std::function<void(TypologyTree::NodeId, const std::vector<double>&)> descend =
      [&](TypologyTree::NodeId id, const std::vector<double>& table) {
        const auto& node = world.tree.node(id);
        if (node.children.empty()) {
          world.sources.emplace(node.label, MarkovSource{k, table});
          return;
        }
        for (auto child : node.children) {
          const double length = world.tree.node(child).length.value_or(1.0);
          if (length < 0.0) throw Error(Errc::invalid_argument, "malformed planted tree: negative branch length");
          const double d = std::min(1.0, delta * length);
          // Always draw, so every edge consumes the same stream for any delta.
          const std::vector<double> fresh = dirichlet_rows(k, concentration, rng);
          std::vector<double> mixed(table.size());
          for (std::size_t r = 0; r < k; ++r) {
            double sum = 0.0;
            for (std::size_t c = 0; c < k; ++c) {
              const std::size_t i = r * k + c;
              mixed[i] = (1.0 - d) * table[i] + d * fresh[i];
              sum += mixed[i];
            }
            for (std::size_t c = 0; c < k; ++c) mixed[r * k + c] /= sum;
          }
          descend(child, mixed);
        }
      };
  descend(world.tree.root(), dirichlet_rows(k, concentration, rng));
  return world;
}

Corpus sample_corpus(const PlantedWorld& world, std::string_view lang, std::size_t n_chars,
                     std::uint64_t seed, std::size_t max_chars) {
  const auto it = world.sources.find(std::string(lang));
  if (it == world.sources.end()) throw Error(Errc::invalid_argument, "unknown language '" + std::string(lang) + "'");
  if (n_chars == 0) throw Error(Errc::invalid_argument, "n_chars must be >= 1");
  const MarkovSource& source = it->second;
  const std::size_t k = source.alphabet_size;
  Rng rng(derive_seed(seed, std::string("sample/") + std::string(lang)));
  std::string text;
  text.reserve(n_chars * 2);
  std::size_t state = static_cast<std::size_t>(rng.below(k));
  utf8::append(text, world.alphabet[state]);
  for (std::size_t i = 1; i < n_chars; ++i) {
    const double* row = source.row(state);
    const double u = rng.uniform();
    double acc = 0.0;
    std::size_t next = k - 1;
    for (std::size_t c = 0; c < k; ++c) {
      acc += row[c];
      if (u < acc) {
        next = c;
        break;
      }
    }
    state = next;
    utf8::append(text, world.alphabet[state]);
  }
  Corpus corpus;
  corpus.lang = std::string(lang);
  corpus.provenance = "synthetic";
  corpus.instances = collate(std::vector<std::string>{std::move(text)}, max_chars);
  return corpus;
}

bool diagonal_dominant(const EntropyMatrix& matrix) {
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      if (j != i && !(matrix.at(i, i) < matrix.at(i, j))) return false;
    }
  }
  return true;
}

RecoveryRun recovery_run(const TypologyTree& planted, const RecoveryParams& params,
                         std::uint64_t seed) {
  const PlantedWorld world =
      generate_world(planted, params.alphabet_size, params.delta, seed, params.concentration);
  const auto langs = world.tree.leaf_labels();
  const std::size_t n = langs.size();

  std::vector<std::optional<MonolingualModel>> slots(n);
  std::vector<Corpus> tests(n);
  parallel_for(n, params.jobs, [&](std::size_t i) {
    const Corpus corpus = sample_corpus(world, langs[i], params.chars_per_language,
                                        derive_seed(seed, "corpus/" + langs[i]));
    const SplitCorpus parts = split(corpus.instances, params.ratios, params.split_floor,
                                    derive_seed(seed, "split/" + langs[i]));
    CharTokenizer tokenizer = CharTokenizer::train(parts.train, true);
    std::vector<TokenSequence> encoded;
    for (const auto& text : parts.train) encoded.push_back(tokenizer.encode(text));
    auto lm = std::make_shared<NGramLM>(NGramLM::fit(encoded, tokenizer.vocab_size(), params.lm));
    slots[i] = MonolingualModel{langs[i], std::move(tokenizer), std::move(lm)};
    tests[i] = Corpus{langs[i], parts.test, corpus.provenance};
  });

  std::vector<MonolingualModel> models;
  for (auto& slot : slots) models.push_back(std::move(*slot));

  RecoveryRun run;
  run.seed = seed;
  run.matrix = build_entropy_matrix(models, tests, params.jobs);
  run.diagonal_dominant = diagonal_dominant(run.matrix);
  const VectorSet vectors = minmax_normalize(language_vectors(run.matrix));
  run.induced = induce_tree(vectors, params.cluster);
  const TreeReport report = compare_trees(world.tree, run.induced);
  run.rf = report.rf;
  run.lca_mae = report.lca_mae;
  return run;
}

std::vector<RecoveryRun> recovery_experiment(const TypologyTree& planted,
                                             const RecoveryParams& params) {
  std::vector<RecoveryRun> runs;
  runs.reserve(params.seeds.size());
  for (std::uint64_t seed : params.seeds) runs.push_back(recovery_run(planted, params, seed));
  return runs;
}

}  // namespace typovec
