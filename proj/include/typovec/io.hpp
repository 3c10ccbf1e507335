#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace typovec::io {

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it over `path`, so readers
// never observe a partially written artifact.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

void append_line(const std::filesystem::path& path, std::string_view line);

std::vector<std::string_view> split(std::string_view text, char sep);
std::vector<std::string_view> lines(std::string_view text);
std::string_view trim(std::string_view text) noexcept;

// %.9g, the precision used by every TSV artifact.
std::string format_g9(double value);
// Shortest representation that round-trips exactly.
std::string format_exact(double value);
double parse_double(std::string_view text);
std::uint64_t parse_uint(std::string_view text);

std::string hex64(std::uint64_t value);

}  // namespace typovec::io
