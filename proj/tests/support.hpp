// Small graph builders shared by the unit and acceptance tests.
#pragma once

#include <cstddef>
#include <vector>

#include "netshrink/graph.hpp"
#include "netshrink/seeding.hpp"

namespace netshrink::testing {

inline Graph make_graph(std::initializer_list<Edge> edges) {
  std::vector<Edge> list(edges);
  return Graph::from_edges(list);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Label u = 0; u < n; ++u)
    for (Label v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(edges);
}

inline Graph ring(std::size_t n) {
  std::vector<Edge> edges;
  for (Label u = 0; u < n; ++u) edges.emplace_back(u, (u + 1) % n);
  return Graph::from_edges(edges);
}

inline Graph path(std::size_t n) {
  std::vector<Edge> edges;
  for (Label u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
  return Graph::from_edges(edges);
}

inline Graph star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Label v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(edges);
}

inline Graph isolated(std::size_t n) {
  std::vector<Label> nodes;
  for (Label u = 0; u < n; ++u) nodes.push_back(u);
  return Graph::from_edges({}, nodes);
}

// G(n, p) with every node present, labels 0..n-1.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  std::vector<Label> nodes;
  for (Label u = 0; u < n; ++u) {
    nodes.push_back(u);
    for (Label v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  }
  return Graph::from_edges(edges, nodes);
}

// Random connected graph: a random spanning tree plus extra random edges.
inline Graph random_connected(std::size_t n, std::size_t extra, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Label v = 1; v < n; ++v) {
    std::uniform_int_distribution<Label> pick(0, v - 1);
    edges.emplace_back(pick(rng), v);
  }
  std::uniform_int_distribution<Label> any(0, n - 1);
  for (std::size_t k = 0; k < extra; ++k) edges.emplace_back(any(rng), any(rng));
  return Graph::from_edges(edges);
}

}  // namespace netshrink::testing
