#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "typovec/corpus.hpp"

namespace typovec {

using TokenId = std::uint32_t;

// Character-level tokenizer. Id layout is fixed:
//   0        [PAD]
//   1        [UNK]
//   2..257   byte tokens 0x00..0xff   (only when byte_fallback is on)
//   then     corpus characters in ascending code point order
class CharTokenizer {
 public:
  static constexpr TokenId kPadId = 0;
  static constexpr TokenId kUnkId = 1;
  static constexpr std::size_t kNumSpecial = 2;

  static CharTokenizer train(std::span<const std::string> texts, bool byte_fallback,
                             std::size_t max_len = kDefaultMaxChars);

  // Per character: in-vocab id, else its UTF-8 byte tokens (byte_fallback)
  // or [UNK]. Truncation to max_len happens before right-padding.
  std::vector<TokenId> encode(std::string_view text, bool truncate = false,
                              bool pad = false) const;

  // Drops [PAD], maps [UNK] to U+FFFD and UTF-8 decodes maximal byte-token
  // runs. Throws on an invalid id or an ill-formed byte run.
  std::string decode(std::span<const TokenId> ids) const;

  std::size_t vocab_size() const noexcept { return first_char_id() + chars_.size(); }
  std::size_t num_chars() const noexcept { return chars_.size(); }
  TokenId pad_id() const noexcept { return kPadId; }
  TokenId unk_id() const noexcept { return kUnkId; }
  bool byte_fallback() const noexcept { return byte_fallback_; }
  std::size_t max_len() const noexcept { return max_len_; }

  std::optional<TokenId> char_id(char32_t cp) const;
  std::optional<TokenId> byte_id(std::uint8_t byte) const;
  // "[PAD]", "[UNK]", "0xHH", or the character itself.
  std::string token_text(TokenId id) const;

  // `token<TAB>id` lines; tab, newline, carriage return and backslash
  // characters are backslash-escaped. Lines without a tab are comments.
  std::string serialize(std::string_view comment = {}) const;
  static CharTokenizer deserialize(std::string_view text);

  friend bool operator==(const CharTokenizer& a, const CharTokenizer& b) {
    return a.chars_ == b.chars_ && a.byte_fallback_ == b.byte_fallback_ &&
           a.max_len_ == b.max_len_;
  }

 private:
  CharTokenizer(std::vector<char32_t> chars, bool byte_fallback, std::size_t max_len);

  TokenId first_char_id() const noexcept {
    return static_cast<TokenId>(kNumSpecial + (byte_fallback_ ? 256 : 0));
  }
  bool is_byte_token(TokenId id) const noexcept {
    return byte_fallback_ && id >= kNumSpecial && id < kNumSpecial + 256;
  }

  std::vector<char32_t> chars_;
  std::unordered_map<char32_t, TokenId> ids_;
  bool byte_fallback_ = false;
  std::size_t max_len_ = kDefaultMaxChars;
};

CharTokenizer train_tokenizer(const Corpus& corpus, bool byte_fallback,
                              std::size_t max_len = kDefaultMaxChars);

}  // namespace typovec
