#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fstgec {

std::string_view Trim(std::string_view s);
std::vector<std::string_view> SplitTabs(std::string_view line);
std::vector<std::string> SplitWhitespace(std::string_view line);
std::string Join(const std::vector<std::string>& tokens, std::string_view sep = " ");

// Whole-field parse; false on trailing garbage.
bool ParseDouble(std::string_view field, double& out);
// Shortest representation that reads back to the same double.
std::string FormatDouble(double value);
std::string FormatFixed(double value, int decimals);

// Reads a text file line by line, stripping '\r'. Throws IoError.
std::vector<std::string> ReadLines(const std::filesystem::path& path);
void WriteLines(const std::filesystem::path& path, const std::vector<std::string>& lines);

}  // namespace fstgec
