#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "typovec/cluster.hpp"
#include "typovec/corpus.hpp"
#include "typovec/entropy.hpp"
#include "typovec/lm.hpp"
#include "typovec/metrics.hpp"
#include "typovec/synth.hpp"

namespace typovec {

inline constexpr std::string_view kVersion = TYPOVEC_VERSION;

struct LanguageEntry {
  std::string lang;
  std::filesystem::path corpus;
};

enum class VectorInput { entropy, external };

struct SynthConfig {
  std::string planted_newick;  // inline, or loaded from planted_tree
  std::vector<std::uint64_t> seeds;
  std::size_t chars_per_language = 200'000;
  std::size_t alphabet_size = 64;
  double delta = 0.3;
  double concentration = kDefaultConcentration;
};

// Declarative description of a full run. Relative paths resolve against the
// config file's directory.
struct PipelineConfig {
  std::uint64_t seed = 0;
  std::filesystem::path output_dir;
  std::vector<LanguageEntry> languages;

  std::size_t max_sentences = kDefaultMaxSentences;
  std::size_t max_chars = kDefaultMaxChars;
  SplitRatios ratios;
  std::size_t split_floor = kDefaultSplitFloor;

  bool byte_fallback = true;
  NGramConfig lm;

  VectorInput vector_input = VectorInput::entropy;
  std::filesystem::path external_vectors;  // when vector_input == external
  VectorVariant variant = VectorVariant::row;
  bool minmax = true;
  std::vector<std::filesystem::path> concat;

  std::string tree_method = "dbscan";  // or single / complete / average / ward
  ClusterParams cluster;

  std::optional<std::filesystem::path> gold_tree;
  bool prune_gold = true;

  std::optional<SynthConfig> synth;

  // Canonical JSON of everything that influences outputs (not output_dir).
  nlohmann::json effective;
  std::string hash;
};

struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> output_dir;
  std::vector<std::filesystem::path> concat;
};

// Parses and validates; every referenced input path must exist.
PipelineConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides = {});
PipelineConfig parse_config(const nlohmann::json& json, const std::filesystem::path& base_dir,
                            const ConfigOverrides& overrides = {});

struct RunOptions {
  std::size_t jobs = 1;
};

// Stage artifacts, relative to the output directory.
namespace artifact {
inline constexpr std::string_view kManifest = "corpus/manifest.tsv";
inline constexpr std::string_view kMatrix = "entropy_matrix.tsv";
inline constexpr std::string_view kVectors = "vectors.tsv";
inline constexpr std::string_view kTreeNewick = "tree.nwk";
inline constexpr std::string_view kTreeJson = "tree.json";
inline constexpr std::string_view kReportJson = "report.json";
inline constexpr std::string_view kReportTsv = "report.tsv";
inline constexpr std::string_view kSynthReport = "synth/report.json";
inline constexpr std::string_view kRunLog = "run.log";
}  // namespace artifact

void cmd_ingest(const PipelineConfig& config, const RunOptions& options = {});
void cmd_train(const PipelineConfig& config, const RunOptions& options = {});
void cmd_entropy(const PipelineConfig& config, const RunOptions& options = {});
void cmd_vectors(const PipelineConfig& config, const RunOptions& options = {});
void cmd_tree(const PipelineConfig& config, const RunOptions& options = {});

struct CompareInputs {
  std::optional<std::filesystem::path> gold;
  std::optional<std::filesystem::path> candidate;
};
TreeReport cmd_compare(const PipelineConfig& config, const CompareInputs& inputs = {},
                       const RunOptions& options = {});
std::vector<RecoveryRun> cmd_synth(const PipelineConfig& config, const RunOptions& options = {});

// Every stage that applies to the config, in order.
void cmd_run(const PipelineConfig& config, const RunOptions& options = {});

nlohmann::json synth_report_json(const std::vector<RecoveryRun>& runs);

}  // namespace typovec
