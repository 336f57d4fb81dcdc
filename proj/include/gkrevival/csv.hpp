#pragma once

// Dataset files: a "# key=value" preamble, one header row, then numeric rows
// printed with 17 significant digits.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace gkr::csv {

struct Table {
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  // Index of a header column; throws std::out_of_range if absent.
  std::size_t column(const std::string& name) const;
};

// Shortest round-trippable rendering used for every numeric field.
std::string format_number(double v);

void write(std::ostream& out, const Table& table);
std::string to_string(const Table& table);

// Throws std::runtime_error on malformed input: missing header, non-numeric
// field, or a row whose width differs from the header.
Table read(std::istream& in);
Table read_file(const std::string& path);

}  // namespace gkr::csv
