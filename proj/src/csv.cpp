#include "scalefield/csv.hpp"

#include <cstdio>
#include <fstream>

#include "scalefield/error.hpp"

namespace scalefield {
namespace {

std::string Quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string Render(const CsvCell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return Quote(*s);
  if (const auto* d = std::get_if<double>(&cell)) return FormatDouble(*d);
  return std::to_string(std::get<std::int64_t>(cell));
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string RenderCsv(const CsvTable& table) {
  if (table.header.empty()) Throw(ErrorCode::kIoError, "CSV header is empty");
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i].empty()) Throw(ErrorCode::kIoError, "CSV header name " + std::to_string(i) + " is empty");
    if (i > 0) out += ',';
    out += Quote(table.header[i]);
  }
  out += '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != table.header.size()) {
      Throw(ErrorCode::kIoError, "CSV row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                                     " fields, header has " + std::to_string(table.header.size()));
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += Render(row[i]);
    }
    out += '\n';
  }
  return out;
}

void EmitCsv(const CsvTable& table, const std::filesystem::path& target) {
  const std::string text = RenderCsv(table);
  std::ofstream os(target, std::ios::binary | std::ios::trunc);
  if (!os) Throw(ErrorCode::kIoError, "cannot open " + target.string() + " for writing");
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!os) Throw(ErrorCode::kIoError, "failed writing " + target.string());
}

}  // namespace scalefield
