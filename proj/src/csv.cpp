#include "polarwell/csv.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "polarwell/errors.hpp"

namespace polarwell::csv {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  // fmt is locale-independent by default.
  return fmt::format("{:.17g}", v);
}

std::string Table::str() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

Table parse(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    if (first) {
      while (std::getline(fields, field, ',')) t.header.push_back(field);
      first = false;
      continue;
    }
    std::vector<double> row;
    while (std::getline(fields, field, ',')) {
      try {
        row.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw DomainError("non-numeric CSV field '" + field + "'");
      }
    }
    if (row.size() != t.header.size()) throw DomainError("CSV row width does not match header");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace polarwell::csv
