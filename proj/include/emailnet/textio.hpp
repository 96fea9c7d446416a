#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace emailnet {

// Shortest round-trip decimal form, deterministic for a given bit pattern.
std::string format_double(double value);

std::string trim(std::string_view text);
std::string to_lower(std::string_view text);

// Minimal RFC-4180 style field handling, enough for the artifact's own files.
std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_escape(std::string_view field);

std::string read_file(const std::filesystem::path& path);  // throws UnreadablePath
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace emailnet
