#include "gkrevival/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gkr::csv {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& field, std::size_t line_no) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw std::runtime_error("csv: line " + std::to_string(line_no) + ": not a number: '" + field + "'");
  return v;
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::out_of_range("csv: no column named " + name);
}

std::string format_number(double v) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

void write(std::ostream& out, const Table& table) {
  for (const auto& [key, value] : table.params) out << "# " << key << '=' << value << '\n';
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

std::string to_string(const Table& table) {
  std::ostringstream out;
  write(out, table);
  return out.str();
}

Table read(std::istream& in) {
  Table table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (have_header) throw std::runtime_error("csv: comment after header at line " + std::to_string(line_no));
      std::string body = line.substr(1);
      if (!body.empty() && body.front() == ' ') body.erase(0, 1);
      const auto eq = body.find('=');
      if (eq == std::string::npos) throw std::runtime_error("csv: malformed preamble at line " + std::to_string(line_no));
      table.params.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      continue;
    }
    if (!have_header) {
      table.header = split(line);
      have_header = true;
      continue;
    }
    const auto fields = split(line);
    if (fields.size() != table.header.size())
      throw std::runtime_error("csv: line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                               " fields, header has " + std::to_string(table.header.size()));
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_number(f, line_no));
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("csv: missing header row");
  return table;
}

Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path);
  return read(in);
}

}  // namespace gkr::csv
