#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace scalefield {

using CsvCell = std::variant<std::string, double, std::int64_t>;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;
};

/// 17 significant digits, enough to round-trip any double.
std::string FormatDouble(double v);

/// Header line first, '\n' line endings, RFC 4180 quoting. Throws kIoError
/// for empty header names or rows whose width differs from the header.
std::string RenderCsv(const CsvTable& table);

/// Writes RenderCsv(table) to `target`. Throws kIoError on failure.
void EmitCsv(const CsvTable& table, const std::filesystem::path& target);

}  // namespace scalefield
