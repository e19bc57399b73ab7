#pragma once

// Minimal reader for the dataset's comma separated files: '#' comments,
// blank lines skipped, first remaining line is the header.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace flexsched::model::detail {

std::string trim(std::string_view s);
std::vector<std::string> split_fields(std::string_view line);

struct TableRow {
  int line = 0;
  std::vector<std::string> fields;
};

class Table {
 public:
  static Table read(const std::filesystem::path& path);

  const std::string& file() const { return file_; }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<TableRow>& rows() const { return rows_; }

  // Column index by header name; ParseError pointing at the header if absent.
  int column(const std::string& name) const;
  bool has_column(const std::string& name) const;

  double number(const TableRow& row, int col) const;
  int integer(const TableRow& row, int col) const;
  const std::string& text(const TableRow& row, int col) const { return row.fields[col]; }

 private:
  std::string file_;
  int header_line_ = 0;
  std::vector<std::string> header_;
  std::vector<TableRow> rows_;
};

double parse_number(std::string_view text, const std::string& file, int line);

}  // namespace flexsched::model::detail
