#include "ea/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ea/errors.hpp"

namespace ea {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& cell, double& out) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  errno = 0;
  out = std::strtod(begin, &end);
  return end != begin && *end == '\0' && errno != ERANGE;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) cells.push_back(trim(cur));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

NumericTable read_numeric_csv(
    const std::string& path, const std::vector<std::string>& expected_header) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open '" + path + "'");

  NumericTable table;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto cells = split_csv_line(t);
    if (!have_header) {
      if (!expected_header.empty() && cells != expected_header) {
        std::string want;
        for (std::size_t i = 0; i < expected_header.size(); ++i)
          want += (i ? "," : "") + expected_header[i];
        fail(ErrorCode::parse, path + ":" + std::to_string(lineno) +
                                   ": expected header '" + want + "'");
      }
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size())
      fail(ErrorCode::parse, path + ":" + std::to_string(lineno) +
                                 ": expected " +
                                 std::to_string(table.header.size()) +
                                 " columns, got " +
                                 std::to_string(cells.size()));
    std::vector<double> row(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!parse_double(cells[i], row[i]))
        fail(ErrorCode::parse, path + ":" + std::to_string(lineno) +
                                   ": cell '" + cells[i] +
                                   "' is not a number");
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) fail(ErrorCode::parse, path + ": empty file (no header)");
  return table;
}

std::string format_g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i)
    buf_ += (i ? "," : "") + names[i];
  buf_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    buf_ += (i ? "," : "") + format_g9(values[i]);
  buf_ += '\n';
}

void CsvWriter::row_raw(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    buf_ += (i ? "," : "") + cells[i];
  buf_ += '\n';
}

void CsvWriter::write_atomic(const std::string& path) const {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::io, "cannot open '" + tmp + "' for writing");
    out << buf_;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      fail(ErrorCode::io, "write failed for '" + tmp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorCode::io, "rename to '" + path + "' failed");
  }
}

}  // namespace ea
