#include "netshrink/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "netshrink/error.hpp"

namespace netshrink {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Returns the next token of `line` starting at `pos`, advancing `pos`.
std::string_view next_token(std::string_view line, std::size_t& pos) {
  while (pos < line.size() && is_space(line[pos])) ++pos;
  const std::size_t start = pos;
  while (pos < line.size() && !is_space(line[pos])) ++pos;
  return line.substr(start, pos - start);
}

}  // namespace

std::vector<Edge> parse_edge_list(std::istream& in, std::string_view source) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view(line);
    std::size_t pos = 0;
    while (pos < view.size() && is_space(view[pos])) ++pos;
    if (pos == view.size() || view[pos] == '#' || view[pos] == '%') continue;

    Label ends[2];
    for (auto& end : ends) {
      const auto token = next_token(view, pos);
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), end);
      if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
        fail(ErrorKind::kData, std::string(source) + ":" + std::to_string(line_number) +
                                   ": expected two non-negative integer labels, got '" +
                                   line + "'");
      }
    }
    edges.emplace_back(ends[0], ends[1]);
  }
  return edges;
}

Graph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::kData, "cannot open edge list " + path.string());
  const auto edges = parse_edge_list(in, path.string());
  return Graph::from_edges(edges);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.num_nodes() << " edges " << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  require(out.good(), ErrorKind::kData, "cannot write " + path.string());
  write_edge_list(out, g);
}

}  // namespace netshrink
