#include "dikin/csv.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dikin/errors.hpp"

namespace dikin::csv {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw UsageError("missing CSV column '" + name + "'");
}

bool Table::has_column(const std::string& name) const {
  for (const auto& h : header)
    if (h == name) return true;
  return false;
}

std::vector<double> Table::numeric_column(std::size_t index) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (index >= row.size())
      throw UsageError("short CSV row while reading column " +
                       std::to_string(index));
    out.push_back(std::strtod(row[index].c_str(), nullptr));
  }
  return out;
}

std::vector<std::size_t> Table::match_columns(const std::string& pattern) const {
  std::vector<std::size_t> out;
  if (!pattern.empty() && pattern.back() == '*') {
    const std::string prefix = pattern.substr(0, pattern.size() - 1);
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i].rfind(prefix, 0) == 0) out.push_back(i);
  } else {
    out.push_back(column_index(pattern));
  }
  if (out.empty()) throw UsageError("no CSV column matches '" + pattern + "'");
  return out;
}

Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open CSV file: " + path);
  Table t;
  std::string line;
  if (!std::getline(in, line))
    throw UsageError("empty CSV file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.header = split_line(line);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    t.rows.push_back(split_line(line));
  }
  return t;
}

}  // namespace dikin::csv
