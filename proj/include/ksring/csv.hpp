#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ksring {

/// Numeric table with a header row. Values are written with 17 significant
/// digits, so reading a file back reproduces every double exactly.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string format_double(double x);

/// Throws std::runtime_error on I/O failure.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace ksring
