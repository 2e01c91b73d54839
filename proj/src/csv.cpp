#include "netshrink/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "netshrink/error.hpp"

namespace netshrink {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  return cells;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

const std::vector<double>& NumericTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name) return columns[c];
  }
  fail(ErrorKind::kData, "CSV has no column '" + name + "'");
}

void write_csv(std::ostream& out, const NumericTable& table) {
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    out << (c ? "," : "") << table.header[c];
  }
  out << '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << format_double(table.columns[c][r]);
    }
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const NumericTable& table) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::kData, "cannot write " + path.string());
  write_csv(out, table);
}

NumericTable read_csv(std::istream& in, const std::string& source) {
  NumericTable table;
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorKind::kData, source + ": empty CSV");
  table.header = split(line);
  table.columns.resize(table.header.size());
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    require(cells.size() == table.header.size(), ErrorKind::kData,
            source + ":" + std::to_string(line_number) + ": expected " +
                std::to_string(table.header.size()) + " cells");
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v = 0.0;
      const auto& s = cells[c];
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      require(ec == std::errc() && ptr == s.data() + s.size(), ErrorKind::kData,
              source + ":" + std::to_string(line_number) + ": not a number: '" + s + "'");
      table.columns[c].push_back(v);
    }
  }
  return table;
}

NumericTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::kData, "cannot open " + path.string());
  return read_csv(in, path.string());
}

}  // namespace netshrink
