#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hypagg::csv {

/// 17 significant digits, '.' decimal separator, independent of the global locale.
std::string format(double v);

/// Writes comma-separated values followed by '\n'.
void write_row(std::ostream& out, std::span<const double> values);
void write_header(std::ostream& out, std::span<const std::string> names);

/// Splits one CSV line on commas (no quoting support).
std::vector<std::string> split(std::string_view line);

/// Reads a numeric CSV with a single header line.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
Table read(std::istream& in);

}  // namespace hypagg::csv
