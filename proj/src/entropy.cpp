#include "typovec/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "typovec/error.hpp"
#include "typovec/io.hpp"
#include "typovec/parallel.hpp"

namespace typovec {

double cross_entropy_on_texts(const MonolingualModel& model, std::span<const std::string> texts) {
  if (!model.model) throw Error(Errc::invalid_argument, "model for " + model.lang + " is empty");
  std::vector<TokenSequence> encoded;
  encoded.reserve(texts.size());
  for (const std::string& text : texts) encoded.push_back(model.tokenizer.encode(text));
  return cross_entropy(*model.model, encoded);
}

EntropyMatrix build_entropy_matrix(std::span<const MonolingualModel> models,
                                   std::span<const Corpus> test_corpora, std::size_t jobs) {
  const std::size_t n = models.size();
  if (n == 0) throw Error(Errc::empty_input, "entropy matrix needs at least one language");
  if (test_corpora.size() != n) {
    throw Error(Errc::mismatch, "entropy matrix needs one test corpus per model");
  }
  std::map<std::string, std::size_t> corpus_of;
  for (std::size_t j = 0; j < n; ++j) {
    if (!corpus_of.emplace(test_corpora[j].lang, j).second) {
      throw Error(Errc::mismatch, "duplicate test corpus for " + test_corpora[j].lang);
    }
  }
  EntropyMatrix matrix;
  std::vector<std::size_t> column_corpus(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = corpus_of.find(models[i].lang);
    if (it == corpus_of.end()) {
      throw Error(Errc::mismatch, "no test corpus for model language " + models[i].lang);
    }
    matrix.langs.push_back(models[i].lang);
    column_corpus[i] = it->second;
  }
  if (std::set<std::string>(matrix.langs.begin(), matrix.langs.end()).size() != n) {
    throw Error(Errc::mismatch, "duplicate model language");
  }
  matrix.values.assign(n * n, 0.0);
  parallel_for(n * n, jobs, [&](std::size_t cell) {
    const std::size_t i = cell / n;
    const std::size_t j = cell % n;
    const double ce = cross_entropy_on_texts(models[i], test_corpora[column_corpus[j]].instances);
    if (!std::isfinite(ce) || ce <= 0.0) {
      throw Error(Errc::numeric, "non-finite or nonpositive cross-entropy for model " +
                                     matrix.langs[i] + " on " + matrix.langs[j]);
    }
    matrix.values[cell] = ce;
  });
  return matrix;
}

std::string_view to_string(VectorSource source) noexcept {
  switch (source) {
    case VectorSource::entropy: return "entropy";
    case VectorSource::external: return "external";
    case VectorSource::concat: return "concat";
  }
  return "unknown";
}

void VectorSet::validate() const {
  if (vectors.size() != langs.size()) throw Error(Errc::mismatch, "vector count differs from language count");
  if (features.size() != dim) throw Error(Errc::mismatch, "feature names differ from dimension");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < langs.size(); ++i) {
    if (!seen.insert(langs[i]).second) throw Error(Errc::mismatch, "duplicate language " + langs[i]);
    if (vectors[i].size() != dim) throw Error(Errc::mismatch, "vector for " + langs[i] + " has wrong width");
    for (double x : vectors[i]) {
      if (!std::isfinite(x)) throw Error(Errc::numeric, "non-finite value in vector for " + langs[i]);
    }
  }
}

namespace {

std::vector<std::string> default_features(std::size_t dim) {
  std::vector<std::string> names;
  for (std::size_t d = 0; d < dim; ++d) names.push_back("f" + std::to_string(d + 1));
  return names;
}

}  // namespace

VectorVariant parse_vector_variant(std::string_view name) {
  if (name == "row") return VectorVariant::row;
  if (name == "column") return VectorVariant::column;
  if (name == "row_column") return VectorVariant::row_column;
  throw Error(Errc::config, "unknown vector variant '" + std::string(name) + "'");
}

VectorSet language_vectors(const EntropyMatrix& matrix, VectorVariant variant) {
  const std::size_t n = matrix.size();
  VectorSet vs;
  vs.langs = matrix.langs;
  vs.source = VectorSource::entropy;
  vs.dim = variant == VectorVariant::row_column ? 2 * n : n;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v;
    v.reserve(vs.dim);
    if (variant != VectorVariant::column) {
      const auto row = matrix.row(i);
      v.insert(v.end(), row.begin(), row.end());
    }
    if (variant != VectorVariant::row) {
      for (std::size_t j = 0; j < n; ++j) v.push_back(matrix.at(j, i));
    }
    vs.vectors.push_back(std::move(v));
  }
  vs.features = default_features(vs.dim);
  return vs;
}

VectorSet minmax_normalize(const VectorSet& vs) {
  if (vs.size() < 2) throw Error(Errc::too_small, "min-max normalization needs at least two languages");
  VectorSet out = vs;
  for (std::size_t d = 0; d < vs.dim; ++d) {
    double lo = vs.vectors[0][d];
    double hi = lo;
    for (const auto& v : vs.vectors) {
      lo = std::min(lo, v[d]);
      hi = std::max(hi, v[d]);
    }
    const double range = hi - lo;
    for (auto& v : out.vectors) v[d] = range > 0.0 ? (v[d] - lo) / range : 0.0;
  }
  return out;
}

VectorSet concat_vectors(const VectorSet& a, const VectorSet& b) {
  if (a.size() == 0 || b.size() == 0) throw Error(Errc::empty_input, "cannot concatenate an empty vector set");
  std::map<std::string, std::size_t> index_b;
  for (std::size_t i = 0; i < b.size(); ++i) index_b.emplace(b.langs[i], i);
  if (index_b.size() != a.size() ||
      std::set<std::string>(a.langs.begin(), a.langs.end()).size() != a.size()) {
    throw Error(Errc::mismatch, "vector sets cover different languages");
  }
  VectorSet out;
  out.langs = a.langs;
  out.dim = a.dim + b.dim;
  out.source = VectorSource::concat;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto it = index_b.find(a.langs[i]);
    if (it == index_b.end()) {
      throw Error(Errc::mismatch, "language " + a.langs[i] + " missing from second vector set");
    }
    std::vector<double> v = a.vectors[i];
    const auto& tail = b.vectors[it->second];
    v.insert(v.end(), tail.begin(), tail.end());
    out.vectors.push_back(std::move(v));
  }
  out.features = default_features(out.dim);
  return out;
}

VectorSet parse_external_vectors(std::string_view text, std::string_view source_name) {
  std::vector<std::string_view> rows;
  for (std::string_view line : io::lines(text)) {
    if (io::trim(line).empty() || line.front() == '#') continue;
    rows.push_back(line);
  }
  if (rows.empty()) throw Error(Errc::empty_input, std::string(source_name) + ": no header row");
  const char sep = rows[0].find('\t') != std::string_view::npos ? '\t' : ',';
  const auto header = io::split(rows[0], sep);
  if (header.size() < 2 || io::trim(header[0]) != "lang") {
    throw Error(Errc::parse, std::string(source_name) + ": header must be lang,f1,...,fk");
  }
  VectorSet vs;
  vs.source = VectorSource::external;
  vs.dim = header.size() - 1;
  for (std::size_t d = 1; d < header.size(); ++d) vs.features.emplace_back(io::trim(header[d]));
  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto cells = io::split(rows[r], sep);
    const std::string lang(io::trim(cells[0]));
    if (lang.empty()) throw Error(Errc::missing_value, std::string(source_name) + ": missing language code on row " + std::to_string(r));
    if (!seen.insert(lang).second) {
      throw Error(Errc::mismatch, std::string(source_name) + ": duplicate language row " + lang);
    }
    if (cells.size() > header.size()) {
      throw Error(Errc::parse, std::string(source_name) + ": too many cells on row " + lang);
    }
    std::vector<double> v;
    for (std::size_t d = 1; d < header.size(); ++d) {
      if (d >= cells.size() || io::trim(cells[d]).empty()) {
        throw Error(Errc::missing_value, "missing value at (" + lang + ", " + vs.features[d - 1] + ")");
      }
      try {
        v.push_back(io::parse_double(cells[d]));
      } catch (const Error&) {
        throw Error(Errc::numeric, "non-numeric value at (" + lang + ", " + vs.features[d - 1] + ")");
      }
      if (!std::isfinite(v.back())) {
        throw Error(Errc::missing_value, "missing value at (" + lang + ", " + vs.features[d - 1] + ")");
      }
    }
    vs.langs.push_back(lang);
    vs.vectors.push_back(std::move(v));
  }
  if (vs.langs.empty()) throw Error(Errc::empty_input, std::string(source_name) + ": no language rows");
  return vs;
}

VectorSet load_external_vectors(const std::filesystem::path& path) {
  return parse_external_vectors(io::read_file(path), path.string());
}

std::string format_matrix_tsv(const EntropyMatrix& matrix, std::string_view comment) {
  std::string out;
  if (!comment.empty()) out += "# " + std::string(comment) + "\n";
  out += "lang";
  for (const auto& lang : matrix.langs) out += "\t" + lang;
  out.push_back('\n');
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out += matrix.langs[i];
    for (double x : matrix.row(i)) out += "\t" + io::format_g9(x);
    out.push_back('\n');
  }
  return out;
}

EntropyMatrix parse_matrix_tsv(std::string_view text) {
  VectorSet vs = parse_external_vectors(text, "entropy matrix");
  EntropyMatrix matrix;
  matrix.langs = vs.langs;
  if (vs.features != vs.langs) throw Error(Errc::parse, "entropy matrix header and row labels differ");
  for (const auto& row : vs.vectors) matrix.values.insert(matrix.values.end(), row.begin(), row.end());
  return matrix;
}

std::string format_vectors_tsv(const VectorSet& vs, std::string_view comment) {
  std::string out;
  if (!comment.empty()) out += "# " + std::string(comment) + "\n";
  out += "lang";
  for (const auto& f : vs.features) out += "\t" + f;
  out.push_back('\n');
  for (std::size_t i = 0; i < vs.size(); ++i) {
    out += vs.langs[i];
    for (double x : vs.vectors[i]) out += "\t" + io::format_g9(x);
    out.push_back('\n');
  }
  return out;
}

}  // namespace typovec
