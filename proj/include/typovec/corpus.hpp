#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace typovec {

inline constexpr std::size_t kDefaultMaxSentences = 1'000'000;
inline constexpr std::size_t kDefaultMaxChars = 1024;
inline constexpr std::size_t kDefaultSplitFloor = 1500;

// Monolingual text for one language. After `collated` every instance holds
// between 1 and max_chars Unicode scalar values.
struct Corpus {
  std::string lang;
  std::vector<std::string> instances;
  std::filesystem::path provenance;
};

// Throws unless `lang` is three lowercase ASCII letters.
void validate_lang_code(std::string_view lang);

// One sentence per line; blank (whitespace-only) lines are dropped and at
// most `max_sentences` sentences are kept, in file order.
Corpus load_corpus(const std::filesystem::path& path, std::string_view lang,
                   std::size_t max_sentences = kDefaultMaxSentences);

// Greedy packing of sentences into instances joined by '\n'. Lengths are
// counted in Unicode scalar values. A sentence longer than max_chars is
// hard-split into max_chars-sized chunks.
std::vector<std::string> collate(std::span<const std::string> sentences,
                                 std::size_t max_chars = kDefaultMaxChars);

Corpus collated(const Corpus& corpus, std::size_t max_chars = kDefaultMaxChars);

struct SplitRatios {
  double train = 0.7;
  double val = 0.2;
  double test = 0.1;
};

struct SplitCounts {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;

  friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};

// test = round(ratio_test * n), val = round(ratio_val * n), train gets the
// rest. If either evaluation split falls under `floor`, both are clamped to
// `floor`. Throws when n < 2 * floor + 1.
SplitCounts split_counts(std::size_t n, const SplitRatios& ratios = {},
                         std::size_t floor = kDefaultSplitFloor);

struct SplitCorpus {
  std::vector<std::string> train;
  std::vector<std::string> val;
  std::vector<std::string> test;
  // Positions in the input instance list, parallel to the lists above.
  std::vector<std::size_t> train_index;
  std::vector<std::size_t> val_index;
  std::vector<std::size_t> test_index;
  std::uint64_t seed = 0;

  SplitCounts counts() const { return {train.size(), val.size(), test.size()}; }
};

// Seeded shuffle followed by `split_counts` assignment (test, then val,
// then train off the shuffled order).
SplitCorpus split(std::span<const std::string> instances, const SplitRatios& ratios = {},
                  std::size_t floor = kDefaultSplitFloor, std::uint64_t seed = 0);

// Split-file line encoding: backslash, newline and carriage return are
// written as "\\\\", "\\n" and "\\r"; a leading '#' becomes "\\#" because
// split files may open with a `# ...` comment line.
std::string escape_instance(std::string_view instance);
std::string unescape_instance(std::string_view line);

std::string format_split_file(std::span<const std::string> instances,
                              std::string_view comment = {});
std::vector<std::string> parse_split_file(std::string_view content);

}  // namespace typovec
