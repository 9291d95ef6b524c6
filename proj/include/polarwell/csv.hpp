#pragma once

#include <string>
#include <vector>

namespace polarwell::csv {

/// %.17g: round-trips every double, '.' decimal separator regardless of locale.
[[nodiscard]] std::string format_double(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Header row then one line per row, CRLF-free, trailing newline.
  [[nodiscard]] std::string str() const;
};

/// Parses what Table::str() writes (header + numeric rows).
[[nodiscard]] Table parse(const std::string& text);

}  // namespace polarwell::csv
