#pragma once

#include <string>
#include <vector>

namespace ea {

// A numeric CSV: fixed header, all cells parse as double. '#' lines and blank
// lines are skipped. Loaders report 1-based line numbers on failure.
struct NumericTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Reads and validates a numeric CSV. If expected_header is non-empty the file
// header must match it exactly (after trimming).
NumericTable read_numeric_csv(const std::string& path,
                              const std::vector<std::string>& expected_header);

// Splits one CSV line on commas and trims surrounding whitespace per cell.
std::vector<std::string> split_csv_line(const std::string& line);

// Formats a double with 9 significant digits — the fixed formatting used in
// every emitted CSV so identical runs are byte-identical.
std::string format_g9(double v);

// Accumulates CSV content and writes it atomically: the file appears under its
// final name only after a successful full write (write to "<path>.tmp", then
// rename). No partial outputs survive an error.
class CsvWriter {
 public:
  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  // Mixed row for outputs with label columns; numeric cells must already be
  // formatted by the caller (use format_g9).
  void row_raw(const std::vector<std::string>& cells);

  const std::string& content() const { return buf_; }
  void write_atomic(const std::string& path) const;

 private:
  std::string buf_;
};

}  // namespace ea
