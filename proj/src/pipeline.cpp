#include "typovec/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <set>

#include "typovec/chartok.hpp"
#include "typovec/error.hpp"
#include "typovec/io.hpp"
#include "typovec/metrics.hpp"
#include "typovec/parallel.hpp"
#include "typovec/random.hpp"
#include "typovec/tree.hpp"

namespace typovec {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace io;

namespace {

[[noreturn]] void config_error(const std::string& message) {
  throw Error(Errc::config, "config: " + message);
}

void check_keys(const json& object, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!object.is_object()) config_error(std::string(where) + " must be an object");
  for (const auto& item : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      config_error("unknown key '" + item.key() + "' in " + std::string(where));
  }
}

template <typename T>
T get_or(const json& object, std::string_view where, const char* key, T fallback) {
  const auto it = object.find(key);
  if (it == object.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    config_error(std::string(where) + "." + key + " has the wrong type");
  }
}

bool is_count(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::size_t get_count(const json& object, std::string_view where, const char* key, std::size_t fallback) {
  const auto it = object.find(key);
  if (it == object.end()) return fallback;
  if (!is_count(*it)) config_error(std::string(where) + "." + key + " must be a non-negative integer");
  return it->get<std::size_t>();
}

fs::path resolve(const fs::path& base, const std::string& raw) {
  fs::path p(raw);
  return p.is_absolute() ? p : base / p;
}

fs::path require_existing(const fs::path& base, const std::string& raw, std::string_view what) {
  const fs::path p = resolve(base, raw);
  if (!fs::exists(p)) config_error(std::string(what) + " not found: " + p.string());
  return p;
}

std::string seeds_label(std::uint64_t seed) { return std::to_string(seed); }

}  // namespace

PipelineConfig parse_config(const json& root, const fs::path& base_dir, const ConfigOverrides& overrides) {
  check_keys(root, "config",
             {"seed", "output_dir", "languages", "corpus", "tokenizer", "lm", "vectors", "tree",
              "gold_tree", "prune_gold", "synth"});
  PipelineConfig config;
  json eff = json::object();

  if (overrides.seed) {
    config.seed = *overrides.seed;
  } else {
    const auto it = root.find("seed");
    if (it == root.end() || !is_count(*it))
      config_error("'seed' is required and must be a non-negative integer");
    config.seed = it->get<std::uint64_t>();
  }
  eff["seed"] = config.seed;

  if (overrides.output_dir) {
    config.output_dir = *overrides.output_dir;
  } else {
    config.output_dir = resolve(base_dir, get_or<std::string>(root, "config", "output_dir", "out"));
  }

  json langs = json::array();
  if (const auto it = root.find("languages"); it != root.end()) {
    if (!it->is_array()) config_error("'languages' must be an array");
    std::set<std::string> seen;
    for (const auto& entry : *it) {
      check_keys(entry, "languages[]", {"lang", "corpus"});
      if (!entry.contains("lang") || !entry.contains("corpus"))
        config_error("each language needs 'lang' and 'corpus'");
      LanguageEntry le;
      le.lang = get_or<std::string>(entry, "languages[]", "lang", "");
      try {
        validate_lang_code(le.lang);
      } catch (const Error& e) {
        config_error(e.what());
      }
      if (!seen.insert(le.lang).second) config_error("duplicate language '" + le.lang + "'");
      const auto raw = get_or<std::string>(entry, "languages[]", "corpus", "");
      le.corpus = require_existing(base_dir, raw, "corpus for " + le.lang);
      langs.push_back({{"lang", le.lang}, {"corpus", raw}});
      config.languages.push_back(std::move(le));
    }
  }
  eff["languages"] = langs;

  const json corpus = root.value("corpus", json::object());
  check_keys(corpus, "corpus", {"max_sentences", "max_chars", "ratios", "split_floor"});
  config.max_sentences = get_count(corpus, "corpus", "max_sentences", kDefaultMaxSentences);
  config.max_chars = get_count(corpus, "corpus", "max_chars", kDefaultMaxChars);
  config.split_floor = get_count(corpus, "corpus", "split_floor", kDefaultSplitFloor);
  if (config.max_chars == 0) config_error("corpus.max_chars must be positive");
  if (const auto it = corpus.find("ratios"); it != corpus.end()) {
    if (!it->is_array() || it->size() != 3) config_error("corpus.ratios must be [train, val, test]");
    try {
      config.ratios = SplitRatios{(*it)[0].get<double>(), (*it)[1].get<double>(), (*it)[2].get<double>()};
    } catch (const json::exception&) {
      config_error("corpus.ratios must be numbers");
    }
  }
  if (std::abs(config.ratios.train + config.ratios.val + config.ratios.test - 1.0) > 1e-9 ||
      config.ratios.train < 0 || config.ratios.val < 0 || config.ratios.test < 0)
    config_error("corpus.ratios must be non-negative and sum to 1");
  eff["corpus"] = {{"max_sentences", config.max_sentences},
                   {"max_chars", config.max_chars},
                   {"ratios", {config.ratios.train, config.ratios.val, config.ratios.test}},
                   {"split_floor", config.split_floor}};

  const json tok = root.value("tokenizer", json::object());
  check_keys(tok, "tokenizer", {"byte_fallback"});
  config.byte_fallback = get_or<bool>(tok, "tokenizer", "byte_fallback", true);
  eff["tokenizer"] = {{"byte_fallback", config.byte_fallback}};

  const json lm = root.value("lm", json::object());
  check_keys(lm, "lm", {"backend", "order", "alpha", "lambdas"});
  const auto backend = get_or<std::string>(lm, "lm", "backend", "ngram");
  if (backend != "ngram") config_error("lm.backend '" + backend + "' is not available (only 'ngram')");
  config.lm.order = get_count(lm, "lm", "order", config.lm.order);
  config.lm.alpha = get_or<double>(lm, "lm", "alpha", config.lm.alpha);
  config.lm.lambdas = get_or<std::vector<double>>(lm, "lm", "lambdas", {});
  if (config.lm.order < 1) config_error("lm.order must be at least 1");
  if (!(config.lm.alpha > 0)) config_error("lm.alpha must be positive");
  if (!config.lm.lambdas.empty() && config.lm.lambdas.size() != config.lm.order)
    config_error("lm.lambdas needs one weight per order");
  eff["lm"] = {{"backend", backend},
               {"order", config.lm.order},
               {"alpha", config.lm.alpha},
               {"lambdas", config.lm.lambdas}};

  const json vec = root.value("vectors", json::object());
  check_keys(vec, "vectors", {"source", "external", "variant", "minmax", "concat"});
  const auto source = get_or<std::string>(vec, "vectors", "source", "entropy");
  json eff_vec = json::object();
  if (source == "entropy") {
    config.vector_input = VectorInput::entropy;
  } else if (source == "external") {
    config.vector_input = VectorInput::external;
    if (!vec.contains("external")) config_error("vectors.source 'external' needs vectors.external");
    const auto raw = get_or<std::string>(vec, "vectors", "external", "");
    config.external_vectors = require_existing(base_dir, raw, "external vectors");
    eff_vec["external"] = raw;
  } else {
    config_error("vectors.source must be 'entropy' or 'external'");
  }
  if (config.vector_input == VectorInput::entropy && config.languages.empty() && !root.contains("synth"))
    config_error("'languages' is required when vectors come from entropy");
  const auto variant = get_or<std::string>(vec, "vectors", "variant", "row");
  try {
    config.variant = parse_vector_variant(variant);
  } catch (const Error& e) {
    config_error(e.what());
  }
  config.minmax = get_or<bool>(vec, "vectors", "minmax", true);
  json concat = json::array();
  for (const auto& raw : get_or<std::vector<std::string>>(vec, "vectors", "concat", {})) {
    config.concat.push_back(require_existing(base_dir, raw, "concat vectors"));
    concat.push_back(raw);
  }
  for (const auto& extra : overrides.concat) {
    if (!fs::exists(extra)) config_error("concat vectors not found: " + extra.string());
    config.concat.push_back(extra);
    concat.push_back(extra.generic_string());
  }
  eff_vec["source"] = source;
  eff_vec["variant"] = variant;
  eff_vec["minmax"] = config.minmax;
  eff_vec["concat"] = concat;
  eff["vectors"] = eff_vec;

  const json tree = root.value("tree", json::object());
  check_keys(tree, "tree", {"method", "epsilon", "min_samples", "max_depth", "epsilon_decay", "metric"});
  config.tree_method = get_or<std::string>(tree, "tree", "method", "dbscan");
  if (config.tree_method != "dbscan") {
    try {
      parse_linkage(config.tree_method);
    } catch (const Error&) {
      config_error("tree.method must be dbscan, single, complete, average or ward");
    }
  }
  config.cluster.epsilon = get_or<double>(tree, "tree", "epsilon", config.cluster.epsilon);
  config.cluster.min_samples_fraction =
      get_or<double>(tree, "tree", "min_samples", config.cluster.min_samples_fraction);
  config.cluster.max_depth = get_count(tree, "tree", "max_depth", config.cluster.max_depth);
  config.cluster.epsilon_decay = get_or<double>(tree, "tree", "epsilon_decay", config.cluster.epsilon_decay);
  const auto metric = get_or<std::string>(tree, "tree", "metric", "euclidean");
  try {
    config.cluster.metric = parse_metric(metric);
    config.cluster.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
  eff["tree"] = {{"method", config.tree_method},
                 {"epsilon", config.cluster.epsilon},
                 {"min_samples", config.cluster.min_samples_fraction},
                 {"max_depth", config.cluster.max_depth},
                 {"epsilon_decay", config.cluster.epsilon_decay},
                 {"metric", metric}};

  if (root.contains("gold_tree")) {
    const auto raw = get_or<std::string>(root, "config", "gold_tree", "");
    config.gold_tree = require_existing(base_dir, raw, "gold tree");
    eff["gold_tree"] = raw;
  }
  config.prune_gold = get_or<bool>(root, "config", "prune_gold", true);
  eff["prune_gold"] = config.prune_gold;

  if (const auto it = root.find("synth"); it != root.end()) {
    const json& s = *it;
    check_keys(s, "synth",
               {"planted_tree", "planted_newick", "seeds", "chars_per_language", "alphabet_size", "delta",
                "concentration"});
    SynthConfig sc;
    if (s.contains("planted_newick") == s.contains("planted_tree"))
      config_error("synth needs exactly one of planted_tree or planted_newick");
    if (s.contains("planted_tree")) {
      const auto raw = get_or<std::string>(s, "synth", "planted_tree", "");
      sc.planted_newick = read_file(require_existing(base_dir, raw, "planted tree"));
    } else {
      sc.planted_newick = get_or<std::string>(s, "synth", "planted_newick", "");
    }
    try {
      parse_newick(sc.planted_newick);
    } catch (const Error& e) {
      config_error(std::string("synth planted tree: ") + e.what());
    }
    // An integer n expands to n seeds derived from the global seed.
    const auto seeds = s.find("seeds");
    if (seeds == s.end() || is_count(*seeds)) {
      const std::size_t n = seeds == s.end() ? 20 : seeds->get<std::size_t>();
      for (std::size_t i = 0; i < n; ++i)
        sc.seeds.push_back(derive_seed(config.seed, "synth/" + std::to_string(i)));
    } else {
      sc.seeds = get_or<std::vector<std::uint64_t>>(s, "synth", "seeds", {});
    }
    if (sc.seeds.empty()) config_error("synth.seeds must not be empty");
    sc.chars_per_language = get_count(s, "synth", "chars_per_language", sc.chars_per_language);
    sc.alphabet_size = get_count(s, "synth", "alphabet_size", sc.alphabet_size);
    sc.delta = get_or<double>(s, "synth", "delta", sc.delta);
    sc.concentration = get_or<double>(s, "synth", "concentration", sc.concentration);
    if (sc.alphabet_size < 2) config_error("synth.alphabet_size must be at least 2");
    if (!(sc.delta >= 0 && sc.delta <= 1)) config_error("synth.delta must lie in [0, 1]");
    if (!(sc.concentration > 0)) config_error("synth.concentration must be positive");
    if (sc.chars_per_language == 0) config_error("synth.chars_per_language must be positive");
    eff["synth"] = {{"planted_newick", sc.planted_newick},
                    {"seeds", sc.seeds},
                    {"chars_per_language", sc.chars_per_language},
                    {"alphabet_size", sc.alphabet_size},
                    {"delta", sc.delta},
                    {"concentration", sc.concentration}};
    config.synth = std::move(sc);
  }

  config.effective = std::move(eff);
  config.hash = hex64(fnv1a64(config.effective.dump()));
  return config;
}

PipelineConfig load_config(const fs::path& path, const ConfigOverrides& overrides) {
  const std::string text = read_file(path);
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse, "config " + path.string() + ": " + e.what());
  }
  return parse_config(root, path.parent_path(), overrides);
}

namespace {

std::string stamp(const PipelineConfig& config) {
  return "typovec " + std::string(kVersion) + " config=" + config.hash;
}

fs::path out_path(const PipelineConfig& config, std::string_view rel) { return config.output_dir / rel; }

fs::path split_path(const PipelineConfig& config, const std::string& lang, std::string_view part) {
  return config.output_dir / "corpus" / (lang + "." + std::string(part) + ".txt");
}

fs::path tokenizer_path(const PipelineConfig& config, const std::string& lang) {
  return config.output_dir / "models" / (lang + ".tokenizer.tsv");
}

fs::path ngram_path(const PipelineConfig& config, const std::string& lang) {
  return config.output_dir / "models" / (lang + ".ngram");
}

std::string require_artifact(const fs::path& path, std::string_view command) {
  if (!fs::exists(path))
    throw Error(Errc::missing_artifact,
                "missing " + path.string() + "; run `typovec " + std::string(command) + "` first");
  return read_file(path);
}

void log_run(const PipelineConfig& config, std::string_view command) {
  append_line(out_path(config, artifact::kRunLog),
              "command=" + std::string(command) + " version=" + std::string(kVersion) +
                  " config=" + config.hash + " seed=" + std::to_string(config.seed));
}

void require_languages(const PipelineConfig& config, std::string_view command) {
  if (config.languages.empty())
    throw Error(Errc::config, "config: " + std::string(command) + " needs at least one language");
}

// Re-raise a per-language failure with the language named.
template <typename Fn>
void for_each_language(const PipelineConfig& config, const RunOptions& options, Fn&& fn) {
  parallel_for(config.languages.size(), options.jobs, [&](std::size_t i) {
    const std::string& lang = config.languages[i].lang;
    try {
      fn(i);
    } catch (const Error& e) {
      throw Error(e.code(), lang + ": " + e.what());
    }
  });
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

std::string display_name(const fs::path& p) { return p.filename().string(); }

VectorSet read_vectors_artifact(const PipelineConfig& config) {
  const std::string text = require_artifact(out_path(config, artifact::kVectors), "vectors");
  VectorSet vs = parse_external_vectors(text, artifact::kVectors);
  return vs;
}

}  // namespace

void cmd_ingest(const PipelineConfig& config, const RunOptions& options) {
  require_languages(config, "ingest");
  fs::create_directories(config.output_dir / "corpus");
  const std::size_t n = config.languages.size();
  std::vector<SplitCounts> counts(n);
  const std::string comment = stamp(config);
  for_each_language(config, options, [&](std::size_t i) {
    const auto& entry = config.languages[i];
    const Corpus raw = load_corpus(entry.corpus, entry.lang, config.max_sentences);
    const std::vector<std::string> instances = collate(raw.instances, config.max_chars);
    const SplitCorpus parts =
        split(instances, config.ratios, config.split_floor, derive_seed(config.seed, "split/" + entry.lang));
    write_file_atomic(split_path(config, entry.lang, "train"), format_split_file(parts.train, comment));
    write_file_atomic(split_path(config, entry.lang, "val"), format_split_file(parts.val, comment));
    write_file_atomic(split_path(config, entry.lang, "test"), format_split_file(parts.test, comment));
    counts[i] = SplitCounts{parts.train.size(), parts.val.size(), parts.test.size()};
  });
  std::string manifest = "# " + comment + "\nlang\ttotal\ttrain\tval\ttest\n";
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = counts[i];
    manifest += config.languages[i].lang + "\t" + std::to_string(c.train + c.val + c.test) + "\t" +
                std::to_string(c.train) + "\t" + std::to_string(c.val) + "\t" + std::to_string(c.test) + "\n";
  }
  write_file_atomic(out_path(config, artifact::kManifest), manifest);
  log_run(config, "ingest");
}

void cmd_train(const PipelineConfig& config, const RunOptions& options) {
  require_languages(config, "train");
  fs::create_directories(config.output_dir / "models");
  const std::string comment = stamp(config);
  for_each_language(config, options, [&](std::size_t i) {
    const std::string& lang = config.languages[i].lang;
    const auto train = parse_split_file(require_artifact(split_path(config, lang, "train"), "ingest"));
    const CharTokenizer tokenizer = CharTokenizer::train(train, config.byte_fallback, config.max_chars);
    std::vector<TokenSequence> encoded;
    encoded.reserve(train.size());
    for (const auto& text : train) encoded.push_back(tokenizer.encode(text));
    const NGramLM lm = NGramLM::fit(encoded, tokenizer.vocab_size(), config.lm);
    write_file_atomic(tokenizer_path(config, lang), tokenizer.serialize(comment));
    write_file_atomic(ngram_path(config, lang), lm.serialize(comment));
  });
  log_run(config, "train");
}

void cmd_entropy(const PipelineConfig& config, const RunOptions& options) {
  require_languages(config, "entropy");
  const std::size_t n = config.languages.size();
  std::vector<std::optional<MonolingualModel>> slots(n);
  std::vector<Corpus> tests(n);
  for_each_language(config, options, [&](std::size_t i) {
    const std::string& lang = config.languages[i].lang;
    auto tokenizer = CharTokenizer::deserialize(require_artifact(tokenizer_path(config, lang), "train"));
    auto lm = std::make_shared<NGramLM>(NGramLM::deserialize(require_artifact(ngram_path(config, lang), "train")));
    if (lm->vocab_size() != tokenizer.vocab_size())
      throw Error(Errc::mismatch, "model and tokenizer vocabularies differ; rerun `typovec train`");
    slots[i] = MonolingualModel{lang, std::move(tokenizer), std::move(lm)};
    tests[i] = Corpus{lang, parse_split_file(require_artifact(split_path(config, lang, "test"), "ingest")),
                      split_path(config, lang, "test").string()};
  });
  std::vector<MonolingualModel> models;
  models.reserve(n);
  for (auto& slot : slots) models.push_back(std::move(*slot));
  const EntropyMatrix matrix = build_entropy_matrix(models, tests, options.jobs);
  write_file_atomic(out_path(config, artifact::kMatrix), format_matrix_tsv(matrix, stamp(config)));
  log_run(config, "entropy");
}

void cmd_vectors(const PipelineConfig& config, const RunOptions& options) {
  (void)options;
  auto prepare = [&](VectorSet vs) { return config.minmax ? minmax_normalize(vs) : vs; };
  VectorSet vs;
  if (config.vector_input == VectorInput::entropy) {
    const EntropyMatrix matrix = parse_matrix_tsv(require_artifact(out_path(config, artifact::kMatrix), "entropy"));
    vs = prepare(language_vectors(matrix, config.variant));
  } else {
    vs = prepare(load_external_vectors(config.external_vectors));
  }
  for (const auto& path : config.concat) vs = concat_vectors(vs, prepare(load_external_vectors(path)));
  fs::create_directories(config.output_dir);
  write_file_atomic(out_path(config, artifact::kVectors),
                    format_vectors_tsv(vs, stamp(config) + " source=" + std::string(to_string(vs.source))));
  log_run(config, "vectors");
}

void cmd_tree(const PipelineConfig& config, const RunOptions& options) {
  (void)options;
  const VectorSet vs = read_vectors_artifact(config);
  const TypologyTree tree = config.tree_method == "dbscan"
                                ? induce_tree(vs, config.cluster)
                                : agglomerative_tree(vs, parse_linkage(config.tree_method));
  write_file_atomic(out_path(config, artifact::kTreeNewick), write_newick(tree, stamp(config)) + "\n");
  json doc = {{"version", std::string(kVersion)},
              {"config_hash", config.hash},
              {"method", config.tree_method},
              {"tree", tree_to_json(tree)}};
  write_file_atomic(out_path(config, artifact::kTreeJson), json_text(doc));
  log_run(config, "tree");
}

TreeReport cmd_compare(const PipelineConfig& config, const CompareInputs& inputs, const RunOptions& options) {
  (void)options;
  std::optional<fs::path> gold_path = inputs.gold ? inputs.gold : config.gold_tree;
  if (!gold_path) throw Error(Errc::config, "config: compare needs a gold tree (gold_tree or --gold)");
  const fs::path candidate_path = inputs.candidate ? *inputs.candidate : out_path(config, artifact::kTreeNewick);
  TypologyTree gold = parse_newick(read_file(*gold_path));
  const TypologyTree candidate = parse_newick(
      inputs.candidate ? read_file(candidate_path) : require_artifact(candidate_path, "tree"));

  if (config.prune_gold) {
    const auto gold_leaves = gold.leaf_labels();
    const auto cand_leaves = candidate.leaf_labels();
    std::set<std::string> keep(cand_leaves.begin(), cand_leaves.end());
    const std::set<std::string> gold_set(gold_leaves.begin(), gold_leaves.end());
    if (std::includes(gold_set.begin(), gold_set.end(), keep.begin(), keep.end()) && keep.size() < gold_set.size())
      gold = prune_tree(gold, keep);
  }
  const TreeReport report = compare_trees(gold, candidate);

  const std::string gold_name = display_name(*gold_path);
  const std::string cand_name = display_name(candidate_path);
  json doc = report_to_json(report, gold_name, cand_name);
  doc["config_hash"] = config.hash;
  doc["version"] = std::string(kVersion);
  fs::create_directories(config.output_dir);
  write_file_atomic(out_path(config, artifact::kReportJson), json_text(doc));
  write_file_atomic(out_path(config, artifact::kReportTsv),
                    "# " + stamp(config) + "\ngold\tcandidate\trf\tlca_mae\n" +
                        report_tsv_line(report, gold_name, cand_name) + "\n");
  log_run(config, "compare");
  return report;
}

namespace {

fs::path synth_matrix_rel(std::uint64_t seed) { return fs::path("synth") / ("matrix_seed" + seeds_label(seed) + ".tsv"); }

}  // namespace

json synth_report_json(const std::vector<RecoveryRun>& runs) {
  json out = json::array();
  for (const auto& run : runs) {
    out.push_back({{"seed", run.seed},
                   {"rf", run.rf},
                   {"lca_mae", run.lca_mae},
                   {"matrix", synth_matrix_rel(run.seed).generic_string()}});
  }
  return out;
}

std::vector<RecoveryRun> cmd_synth(const PipelineConfig& config, const RunOptions& options) {
  if (!config.synth) throw Error(Errc::config, "config: synth needs a 'synth' section");
  const SynthConfig& sc = *config.synth;
  RecoveryParams params;
  params.seeds = sc.seeds;
  params.chars_per_language = sc.chars_per_language;
  params.alphabet_size = sc.alphabet_size;
  params.delta = sc.delta;
  params.concentration = sc.concentration;
  params.ratios = config.ratios;
  params.lm = config.lm;
  params.cluster = config.cluster;
  params.jobs = options.jobs;
  const TypologyTree planted = parse_newick(sc.planted_newick);

  std::vector<RecoveryRun> runs = recovery_experiment(planted, params);
  fs::create_directories(config.output_dir / "synth");
  const std::string comment = stamp(config);
  for (const auto& run : runs)
    write_file_atomic(config.output_dir / synth_matrix_rel(run.seed),
                      format_matrix_tsv(run.matrix, comment + " seed=" + seeds_label(run.seed)));
  json report = synth_report_json(runs);
  for (auto& entry : report) entry["config_hash"] = config.hash;
  write_file_atomic(out_path(config, artifact::kSynthReport), json_text(report));
  log_run(config, "synth");
  return runs;
}

void cmd_run(const PipelineConfig& config, const RunOptions& options) {
  if (config.vector_input == VectorInput::entropy) {
    if (config.languages.empty()) {
      if (config.synth) cmd_synth(config, options);
      return;
    }
    cmd_ingest(config, options);
    cmd_train(config, options);
    cmd_entropy(config, options);
  }
  cmd_vectors(config, options);
  cmd_tree(config, options);
  if (config.gold_tree) cmd_compare(config, {}, options);
  if (config.synth) cmd_synth(config, options);
}

}  // namespace typovec
