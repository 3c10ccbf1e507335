#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "typovec/chartok.hpp"
#include "typovec/corpus.hpp"
#include "typovec/lm.hpp"

namespace typovec {

// A language's model together with the tokenizer it reads text through.
struct MonolingualModel {
  std::string lang;
  CharTokenizer tokenizer;
  std::shared_ptr<const LanguageModel> model;
};

// Encodes `texts` with the model's own tokenizer (no truncation) and scores
// them; foreign characters go through byte fallback when it is enabled.
double cross_entropy_on_texts(const MonolingualModel& model, std::span<const std::string> texts);

// values[i * n + j] = cross-entropy of langs[i]'s model on langs[j]'s test
// corpus, in nats per token. Row i is the language vector of langs[i].
struct EntropyMatrix {
  std::vector<std::string> langs;
  std::vector<double> values;

  std::size_t size() const noexcept { return langs.size(); }
  double at(std::size_t i, std::size_t j) const { return values.at(i * langs.size() + j); }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values).subspan(i * langs.size(), langs.size());
  }
};

// Rows follow the order of `models`; corpora are matched by language code.
// Cells are independent and evaluated on up to `jobs` threads; the result
// does not depend on the schedule.
EntropyMatrix build_entropy_matrix(std::span<const MonolingualModel> models,
                                   std::span<const Corpus> test_corpora, std::size_t jobs = 1);

enum class VectorSource { entropy, external, concat };
std::string_view to_string(VectorSource source) noexcept;

struct VectorSet {
  std::vector<std::string> langs;
  std::size_t dim = 0;
  std::vector<std::vector<double>> vectors;
  VectorSource source = VectorSource::entropy;
  // Column names; f1..fk unless the source supplies its own.
  std::vector<std::string> features;

  std::size_t size() const noexcept { return langs.size(); }
  // Throws unless dense, rectangular, finite and free of duplicate languages.
  void validate() const;
};

enum class VectorVariant { row, column, row_column };
VectorVariant parse_vector_variant(std::string_view name);

// Language vectors from the matrix: row i (default), column i, or row i
// followed by column i.
VectorSet language_vectors(const EntropyMatrix& matrix, VectorVariant variant = VectorVariant::row);

// Per-dimension (x - min) / (max - min); a constant dimension maps to 0.
VectorSet minmax_normalize(const VectorSet& vs);

// Per language a ++ b, in a's language order. Both sets must cover the same
// languages.
VectorSet concat_vectors(const VectorSet& a, const VectorSet& b);

// Header `lang,f1,...,fk` (comma or tab separated, chosen from the header
// line), one row per language. Missing cells are rejected, not imputed.
// Lines starting with '#' are comments.
VectorSet parse_external_vectors(std::string_view text, std::string_view source_name = "input");
VectorSet load_external_vectors(const std::filesystem::path& path);

// TSV artifacts: optional `# ...` comment line, header `lang<TAB>...`,
// values at 9 significant digits.
std::string format_matrix_tsv(const EntropyMatrix& matrix, std::string_view comment = {});
EntropyMatrix parse_matrix_tsv(std::string_view text);
std::string format_vectors_tsv(const VectorSet& vs, std::string_view comment = {});

}  // namespace typovec
