#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace netshrink {

// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);

// Numeric table with named columns, stored column-major.
struct NumericTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  // Column by name; throws a data error if absent.
  const std::vector<double>& column(const std::string& name) const;
};

void write_csv(std::ostream& out, const NumericTable& table);
void write_csv(const std::filesystem::path& path, const NumericTable& table);

// Comma-separated numeric table with a header row.
NumericTable read_csv(std::istream& in, const std::string& source = "<stream>");
NumericTable read_csv(const std::filesystem::path& path);

}  // namespace netshrink
