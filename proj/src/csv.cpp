#include "uavlink/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "uavlink/errors.hpp"

namespace uavlink::csv {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::optional<std::size_t> Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) {
      return i;
    }
  }
  return std::nullopt;
}

Table read(std::istream& in, std::string source) {
  Table table;
  table.source = std::move(source);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (lineno == 1 && view.starts_with("\xEF\xBB\xBF")) {
      view.remove_prefix(3);
    }
    const auto trimmed = trim(view);
    if (trimmed.empty() || trimmed.front() == '#') {
      continue;
    }
    auto fields = split(trimmed);
    if (table.header.empty()) {
      table.header = std::move(fields);
      table.header_line = lineno;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw LoadError(table.source, lineno,
                      "expected " + std::to_string(table.header.size()) + " fields, got " +
                          std::to_string(fields.size()));
    }
    table.rows.push_back({lineno, std::move(fields)});
  }
  return table;
}

double parse_double(const Table& t, const Row& row, std::size_t col) {
  const std::string& field = row.fields.at(col);
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  // from_chars rejects a leading '+', which hand-edited files sometimes carry.
  if (begin != end && *begin == '+') {
    ++begin;
  }
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || field.empty() || !std::isfinite(value)) {
    throw LoadError(t.source, row.line,
                    "column '" + t.header.at(col) + "': not a number: '" + field + "'");
  }
  return value;
}

long long parse_int(const Table& t, const Row& row, std::size_t col) {
  const std::string& field = row.fields.at(col);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw LoadError(t.source, row.line,
                    "column '" + t.header.at(col) + "': not an integer: '" + field + "'");
  }
  return value;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace uavlink::csv
