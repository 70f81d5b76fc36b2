#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace rhk {

// Shortest round-trip decimal form of a double ('.' separator, no locale).
std::string format_double(double x);

// Parse with strtod semantics; throws ConfigError on trailing garbage.
double parse_double(const std::string& s);

// CSV with a header row, one record per line, LF line endings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string to_csv(const CsvTable& t);
CsvTable read_csv(const std::filesystem::path& file);

// Writes to "<path>.partial" and renames into place, so a crash never leaves
// a truncated file under the final name.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace rhk
