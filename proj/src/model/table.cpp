#include "table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "flexsched/errors.hpp"

namespace flexsched::model::detail {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                           : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(std::string_view text, const std::string& file, int line) {
  std::string t = trim(text);
  const char* first = t.data();
  const char* last = first + t.size();
  if (first != last && *first == '+') ++first;
  double v = 0.0;
  auto res = std::from_chars(first, last, v);
  if (t.empty() || res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
    throw ParseError(file, line, "expected a number, got '" + t + "'");
  }
  return v;
}

Table Table::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  Table table;
  table.file_ = path.string();
  if (!in) throw ParseError(table.file_, 0, "cannot open file");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (table.header_.empty()) {
      table.header_ = std::move(fields);
      table.header_line_ = line_no;
      continue;
    }
    if (fields.size() != table.header_.size()) {
      throw ParseError(table.file_, line_no,
                       "expected " + std::to_string(table.header_.size()) + " fields, found " +
                           std::to_string(fields.size()));
    }
    table.rows_.push_back({line_no, std::move(fields)});
  }
  if (table.header_.empty()) throw ParseError(table.file_, line_no, "missing header line");
  return table;
}

bool Table::has_column(const std::string& name) const {
  for (const auto& h : header_) if (h == name) return true;
  return false;
}

int Table::column(const std::string& name) const {
  for (size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return static_cast<int>(i);
  }
  throw ParseError(file_, header_line_, "missing column '" + name + "'");
}

double Table::number(const TableRow& row, int col) const {
  return parse_number(row.fields[col], file_, row.line);
}

int Table::integer(const TableRow& row, int col) const {
  double v = number(row, col);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ParseError(file_, row.line, "expected an integer, got '" + row.fields[col] + "'");
  }
  return static_cast<int>(v);
}

}  // namespace flexsched::model::detail
