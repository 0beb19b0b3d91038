#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uavlink::csv {

struct Row {
  std::size_t line = 0;  // 1-based line number in the source
  std::vector<std::string> fields;
};

/// Comma-separated table with a mandatory header. Blank lines and lines whose
/// first non-space character is '#' are skipped. Fields are trimmed; quoting
/// is not supported.
struct Table {
  std::string source;
  std::size_t header_line = 0;
  std::vector<std::string> header;
  std::vector<Row> rows;

  bool empty() const { return header.empty(); }
  std::optional<std::size_t> column(std::string_view name) const;
};

/// Throws LoadError if a data row's field count differs from the header's.
Table read(std::istream& in, std::string source);

// Field parsers. Errors name the source, line, and column.
double parse_double(const Table& t, const Row& row, std::size_t col);
long long parse_int(const Table& t, const Row& row, std::size_t col);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

}  // namespace uavlink::csv
