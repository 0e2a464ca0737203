#pragma once

// Minimal CSV reading/writing for numeric tables with a fixed header.
// Doubles are written with 17 significant digits so they round-trip exactly.

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "nearideal/error.hpp"

namespace nearideal::csv {

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline void write_row(std::ostream& os, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) os << ',';
    os << c;
    first = false;
  }
  os << '\n';
}

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  for (auto& c : cells) {
    while (!c.empty() && (c.front() == ' ' || c.front() == '\t')) c.remove_prefix(1);
    while (!c.empty() && (c.back() == ' ' || c.back() == '\t' || c.back() == '\r')) c.remove_suffix(1);
  }
  return cells;
}

inline double parse_double(std::string_view cell, std::size_t line_no) {
  double v = 0.0;
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size())
    throw ParseError("line " + std::to_string(line_no) + ": not a number: '" + std::string(cell) + "'");
  return v;
}

inline std::int64_t parse_int(std::string_view cell, std::size_t line_no) {
  std::int64_t v = 0;
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size())
    throw ParseError("line " + std::to_string(line_no) + ": not an integer: '" + std::string(cell) + "'");
  return v;
}

/// A two-column table "<index_name>,<value_name>" with integer index
/// ascending by exactly one per row.
struct IndexedColumn {
  std::int64_t start = 0;
  std::vector<double> values;
};

inline IndexedColumn read_indexed_column(std::istream& is, std::string_view index_name,
                                         std::string_view value_name) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (split(line).front().empty() && split(line).size() == 1) continue;
    break;
  }
  const auto header = split(line);
  if (header.size() != 2 || header[0] != index_name || header[1] != value_name)
    throw ParseError("expected header '" + std::string(index_name) + "," + std::string(value_name) + "'");

  IndexedColumn out;
  bool first = true;
  std::int64_t expected = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto cells = split(line);
    if (cells.size() == 1 && cells[0].empty()) continue;
    if (cells.size() != 2)
      throw ParseError("line " + std::to_string(line_no) + ": expected 2 columns");
    const auto t = parse_int(cells[0], line_no);
    if (first) {
      out.start = t;
      expected = t;
      first = false;
    }
    if (t != expected)
      throw ParseError("line " + std::to_string(line_no) + ": index must ascend by 1");
    out.values.push_back(parse_double(cells[1], line_no));
    ++expected;
  }
  return out;
}

}  // namespace nearideal::csv
