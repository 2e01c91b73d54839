#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "netshrink/graph.hpp"

namespace netshrink {

// Edge-list text: one edge per line as two whitespace-separated non-negative
// integers. Blank lines and lines starting with '#' or '%' are skipped;
// tokens after the first two (e.g. weights) are ignored. Malformed lines
// raise a data error naming `source` and the line number.
std::vector<Edge> parse_edge_list(std::istream& in, std::string_view source = "<stream>");

Graph read_edge_list(const std::filesystem::path& path);

void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

}  // namespace netshrink
