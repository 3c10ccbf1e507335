#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace typovec::utf8 {

// Byte offset of the first ill-formed sequence, or nullopt if `text` is
// well-formed UTF-8 (no overlongs, no surrogates, nothing above U+10FFFF).
std::optional<std::size_t> first_invalid(std::string_view text) noexcept;

inline bool is_valid(std::string_view text) noexcept {
  return !first_invalid(text).has_value();
}

// Throws Error(invalid_utf8) naming the byte offset.
std::vector<char32_t> decode(std::string_view text);

void append(std::string& out, char32_t code_point);
std::string encode(char32_t code_point);
std::string encode(const std::vector<char32_t>& code_points);

// Number of Unicode scalar values; `text` must be valid.
std::size_t length(std::string_view text);

}  // namespace typovec::utf8
