#include "typovec/chartok.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "typovec/error.hpp"
#include "typovec/io.hpp"
#include "typovec/utf8.hpp"

namespace typovec {
namespace {

constexpr std::string_view kPadText = "[PAD]";
constexpr std::string_view kUnkText = "[UNK]";
constexpr char32_t kReplacement = 0xFFFD;

std::string byte_text(unsigned byte) {
  char buf[5];
  std::snprintf(buf, sizeof buf, "0x%02x", byte);
  return buf;
}

std::string escape_token(std::string_view token) {
  std::string out;
  for (char c : token) {
    switch (c) {
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\\': out += "\\\\"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string unescape_token(std::string_view token) {
  std::string out;
  for (std::size_t i = 0; i < token.size(); ++i) {
    if (token[i] != '\\' || i + 1 == token.size()) {
      out.push_back(token[i]);
      continue;
    }
    switch (token[++i]) {
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      case '\\': out.push_back('\\'); break;
      default: throw Error(Errc::parse, "bad escape in tokenizer file: " + std::string(token));
    }
  }
  return out;
}

}  // namespace

CharTokenizer::CharTokenizer(std::vector<char32_t> chars, bool byte_fallback, std::size_t max_len)
    : chars_(std::move(chars)), byte_fallback_(byte_fallback), max_len_(max_len) {
  if (max_len_ == 0) throw Error(Errc::invalid_argument, "tokenizer max_len must be >= 1");
  ids_.reserve(chars_.size());
  for (std::size_t i = 0; i < chars_.size(); ++i) {
    ids_.emplace(chars_[i], static_cast<TokenId>(first_char_id() + i));
  }
}

CharTokenizer CharTokenizer::train(std::span<const std::string> texts, bool byte_fallback,
                                   std::size_t max_len) {
  std::set<char32_t> seen;
  for (const std::string& text : texts) {
    for (char32_t cp : utf8::decode(text)) seen.insert(cp);
  }
  if (seen.empty()) throw Error(Errc::empty_input, "cannot train a tokenizer on an empty corpus");
  return CharTokenizer({seen.begin(), seen.end()}, byte_fallback, max_len);
}

CharTokenizer train_tokenizer(const Corpus& corpus, bool byte_fallback, std::size_t max_len) {
  return CharTokenizer::train(corpus.instances, byte_fallback, max_len);
}

std::optional<TokenId> CharTokenizer::char_id(char32_t cp) const {
  const auto it = ids_.find(cp);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<TokenId> CharTokenizer::byte_id(std::uint8_t byte) const {
  if (!byte_fallback_) return std::nullopt;
  return static_cast<TokenId>(kNumSpecial + byte);
}

std::vector<TokenId> CharTokenizer::encode(std::string_view text, bool truncate, bool pad) const {
  std::vector<TokenId> ids;
  ids.reserve(text.size());
  for (char32_t cp : utf8::decode(text)) {
    if (const auto id = char_id(cp)) {
      ids.push_back(*id);
    } else if (byte_fallback_) {
      for (unsigned char b : utf8::encode(cp)) ids.push_back(static_cast<TokenId>(kNumSpecial + b));
    } else {
      ids.push_back(kUnkId);
    }
  }
  if (truncate && ids.size() > max_len_) ids.resize(max_len_);
  if (pad && ids.size() < max_len_) ids.resize(max_len_, kPadId);
  return ids;
}

std::string CharTokenizer::decode(std::span<const TokenId> ids) const {
  std::string out;
  std::string bytes;
  std::size_t run_start = 0;
  const auto flush_bytes = [&] {
    if (bytes.empty()) return;
    if (const auto bad = utf8::first_invalid(bytes)) {
      throw Error(Errc::invalid_utf8, "byte tokens starting at token offset " +
                                          std::to_string(run_start) +
                                          " are not valid UTF-8 (byte " + std::to_string(*bad) +
                                          " of the run)");
    }
    out += bytes;
    bytes.clear();
  };

  for (std::size_t i = 0; i < ids.size(); ++i) {
    const TokenId id = ids[i];
    if (id >= vocab_size()) {
      throw Error(Errc::invalid_argument, "token id " + std::to_string(id) +
                                              " out of range at offset " + std::to_string(i));
    }
    if (id == kPadId) continue;
    if (is_byte_token(id)) {
      if (bytes.empty()) run_start = i;
      bytes.push_back(static_cast<char>(id - kNumSpecial));
      continue;
    }
    flush_bytes();
    if (id == kUnkId) {
      utf8::append(out, kReplacement);
    } else {
      utf8::append(out, chars_[id - first_char_id()]);
    }
  }
  flush_bytes();
  return out;
}

std::string CharTokenizer::token_text(TokenId id) const {
  if (id >= vocab_size()) throw Error(Errc::invalid_argument, "token id out of range");
  if (id == kPadId) return std::string(kPadText);
  if (id == kUnkId) return std::string(kUnkText);
  if (is_byte_token(id)) return byte_text(id - kNumSpecial);
  return utf8::encode(chars_[id - first_char_id()]);
}

std::string CharTokenizer::serialize(std::string_view comment) const {
  std::string out = "# typovec-tokenizer max_len=" + std::to_string(max_len_);
  if (!comment.empty()) {
    out.push_back(' ');
    out += comment;
  }
  out.push_back('\n');
  for (TokenId id = 0; id < vocab_size(); ++id) {
    out += escape_token(token_text(id));
    out.push_back('\t');
    out += std::to_string(id);
    out.push_back('\n');
  }
  return out;
}

CharTokenizer CharTokenizer::deserialize(std::string_view text) {
  std::size_t max_len = kDefaultMaxChars;
  std::vector<std::pair<TokenId, std::string>> entries;
  for (std::string_view line : io::lines(text)) {
    const std::size_t tab = line.rfind('\t');
    if (tab == std::string_view::npos) {
      const std::size_t key = line.find("max_len=");
      if (!line.empty() && line.front() == '#' && key != std::string_view::npos) {
        const std::string_view rest = line.substr(key + 8);
        max_len = io::parse_uint(rest.substr(0, rest.find(' ')));
      }
      continue;
    }
    entries.emplace_back(static_cast<TokenId>(io::parse_uint(line.substr(tab + 1))),
                         unescape_token(line.substr(0, tab)));
  }
  std::sort(entries.begin(), entries.end());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first != i) throw Error(Errc::parse, "tokenizer ids are not dense at id " + std::to_string(i));
  }
  if (entries.size() < kNumSpecial || entries[kPadId].second != kPadText ||
      entries[kUnkId].second != kUnkText) {
    throw Error(Errc::parse, "tokenizer file lacks [PAD]=0 and [UNK]=1");
  }
  const bool byte_fallback = entries.size() > kNumSpecial && entries[kNumSpecial].second == "0x00";
  std::size_t first = kNumSpecial;
  if (byte_fallback) {
    for (unsigned b = 0; b < 256; ++b) {
      if (entries.size() <= kNumSpecial + b || entries[kNumSpecial + b].second != byte_text(b)) {
        throw Error(Errc::parse, "incomplete byte token table");
      }
    }
    first += 256;
  }
  std::vector<char32_t> chars;
  for (std::size_t i = first; i < entries.size(); ++i) {
    const std::vector<char32_t> cps = utf8::decode(entries[i].second);
    if (cps.size() != 1) throw Error(Errc::parse, "tokenizer entry " + std::to_string(i) + " is not one character");
    if (!chars.empty() && cps[0] <= chars.back()) throw Error(Errc::parse, "tokenizer characters not in code point order");
    chars.push_back(cps[0]);
  }
  return CharTokenizer(std::move(chars), byte_fallback, max_len);
}

}  // namespace typovec
