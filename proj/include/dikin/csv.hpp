#pragma once

#include <string>
#include <vector>

namespace dikin::csv {

// Header plus string cells; numeric conversion happens on column access.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column_index(const std::string& name) const;  // throws UsageError
  bool has_column(const std::string& name) const;
  std::vector<double> numeric_column(std::size_t index) const;
  // All columns whose name matches `pattern`, where a trailing '*' acts
  // as a prefix wildcard ("value_*").
  std::vector<std::size_t> match_columns(const std::string& pattern) const;
};

Table read_file(const std::string& path);  // throws UsageError

}  // namespace dikin::csv
