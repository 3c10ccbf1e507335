#include "typovec/corpus.hpp"

#include <cmath>
#include <numeric>

#include "typovec/error.hpp"
#include "typovec/io.hpp"
#include "typovec/random.hpp"
#include "typovec/utf8.hpp"

namespace typovec {

void validate_lang_code(std::string_view lang) {
  bool ok = lang.size() == 3;
  for (char c : lang) ok = ok && c >= 'a' && c <= 'z';
  if (!ok) {
    throw Error(Errc::invalid_argument,
                "language code must be three lowercase letters: '" + std::string(lang) + "'");
  }
}

Corpus load_corpus(const std::filesystem::path& path, std::string_view lang,
                   std::size_t max_sentences) {
  validate_lang_code(lang);
  const std::string content = io::read_file(path);
  if (const auto bad = utf8::first_invalid(content)) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < *bad; ++i) line += content[i] == '\n';
    throw Error(Errc::invalid_utf8, path.string() + ": invalid UTF-8 on line " +
                                        std::to_string(line) + " (byte offset " +
                                        std::to_string(*bad) + ")");
  }
  Corpus corpus{std::string(lang), {}, path};
  for (std::string_view line : io::lines(content)) {
    if (corpus.instances.size() >= max_sentences) break;
    if (io::trim(line).empty()) continue;
    corpus.instances.emplace_back(line);
  }
  if (corpus.instances.empty()) {
    throw Error(Errc::empty_input, path.string() + ": zero usable sentences");
  }
  return corpus;
}

std::vector<std::string> collate(std::span<const std::string> sentences, std::size_t max_chars) {
  if (max_chars == 0) throw Error(Errc::invalid_argument, "max_chars must be >= 1");
  std::vector<std::string> out;
  std::string current;
  std::size_t current_len = 0;
  const auto flush = [&] {
    if (current_len > 0) out.push_back(std::move(current));
    current.clear();
    current_len = 0;
  };

  for (const std::string& sentence : sentences) {
    const std::size_t len = utf8::length(sentence);
    if (len == 0) continue;
    if (len > max_chars) {
      flush();
      const std::vector<char32_t> cps = utf8::decode(sentence);
      std::size_t pos = 0;
      for (; cps.size() - pos > max_chars; pos += max_chars) {
        out.push_back(utf8::encode({cps.begin() + static_cast<std::ptrdiff_t>(pos),
                                    cps.begin() + static_cast<std::ptrdiff_t>(pos + max_chars)}));
      }
      // The tail stays open so following sentences can pack behind it.
      current = utf8::encode({cps.begin() + static_cast<std::ptrdiff_t>(pos), cps.end()});
      current_len = cps.size() - pos;
      continue;
    }
    if (current_len == 0) {
      current = sentence;
      current_len = len;
    } else if (current_len + 1 + len <= max_chars) {
      current.push_back('\n');
      current += sentence;
      current_len += 1 + len;
    } else {
      flush();
      current = sentence;
      current_len = len;
    }
  }
  flush();
  return out;
}

Corpus collated(const Corpus& corpus, std::size_t max_chars) {
  return {corpus.lang, collate(corpus.instances, max_chars), corpus.provenance};
}

SplitCounts split_counts(std::size_t n, const SplitRatios& ratios, std::size_t floor) {
  const double sum = ratios.train + ratios.val + ratios.test;
  if (ratios.train < 0 || ratios.val < 0 || ratios.test < 0 || std::abs(sum - 1.0) > 1e-9) {
    throw Error(Errc::invalid_argument, "split ratios must be nonnegative and sum to 1");
  }
  if (n < 2 * floor + 1) {
    throw Error(Errc::too_small, "corpus too small to split: " + std::to_string(n) +
                                     " instances, need at least " +
                                     std::to_string(2 * floor + 1));
  }
  const auto share = [n](double ratio) {
    return static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
  };
  SplitCounts counts;
  counts.test = share(ratios.test);
  counts.val = share(ratios.val);
  if (counts.test < floor || counts.val < floor) {
    counts.test = floor;
    counts.val = floor;
  }
  if (counts.test + counts.val > n) {
    throw Error(Errc::too_small, "corpus too small to split: evaluation shares exceed " +
                                     std::to_string(n) + " instances");
  }
  counts.train = n - counts.test - counts.val;
  return counts;
}

SplitCorpus split(std::span<const std::string> instances, const SplitRatios& ratios,
                  std::size_t floor, std::uint64_t seed) {
  const SplitCounts counts = split_counts(instances.size(), ratios, floor);
  std::vector<std::size_t> order(instances.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, "split"));
  shuffle(std::span<std::size_t>(order), rng);

  SplitCorpus out;
  out.seed = seed;
  const auto take = [&](std::size_t begin, std::size_t count, std::vector<std::string>& items,
                        std::vector<std::size_t>& index) {
    index.assign(order.begin() + static_cast<std::ptrdiff_t>(begin),
                 order.begin() + static_cast<std::ptrdiff_t>(begin + count));
    items.reserve(count);
    for (std::size_t i : index) items.push_back(instances[i]);
  };
  take(0, counts.test, out.test, out.test_index);
  take(counts.test, counts.val, out.val, out.val_index);
  take(counts.test + counts.val, counts.train, out.train, out.train_index);
  return out;
}

std::string escape_instance(std::string_view instance) {
  std::string out;
  out.reserve(instance.size() + 1);
  // A leading '#' would read back as a comment line.
  if (!instance.empty() && instance.front() == '#') out.push_back('\\');
  for (char c : instance) {
    if (c == '\\') {
      out += "\\\\";
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '\r') {
      out += "\\r";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string unescape_instance(std::string_view line) {
  std::string out;
  out.reserve(line.size());
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] != '\\') {
      out.push_back(line[i]);
      continue;
    }
    if (i + 1 == line.size()) throw Error(Errc::parse, "dangling escape in split line");
    const char next = line[++i];
    if (next == 'n') {
      out.push_back('\n');
    } else if (next == 'r') {
      out.push_back('\r');
    } else if (next == '#' && i == 1) {
      out.push_back('#');
    } else if (next == '\\') {
      out.push_back('\\');
    } else {
      throw Error(Errc::parse, std::string("unknown escape \\") + next + " in split line");
    }
  }
  return out;
}

std::string format_split_file(std::span<const std::string> instances, std::string_view comment) {
  std::string out;
  if (!comment.empty()) out += "# " + std::string(comment) + "\n";
  for (const std::string& instance : instances) {
    out += escape_instance(instance);
    out.push_back('\n');
  }
  return out;
}

std::vector<std::string> parse_split_file(std::string_view content) {
  std::vector<std::string> out;
  for (std::string_view line : io::lines(content)) {
    if (line.empty() || line.front() == '#') continue;
    out.push_back(unescape_instance(line));
  }
  return out;
}

}  // namespace typovec
