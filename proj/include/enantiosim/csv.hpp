#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace enantiosim {

/// Numeric CSV table; values print with 12 significant digits.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
};

std::string format_number(double v);
std::string to_csv(const CsvTable& t);

/// Writes to a temporary sibling file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
void write_csv(const std::filesystem::path& path, const CsvTable& t);

/// Parses a CSV produced by to_csv.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace enantiosim
