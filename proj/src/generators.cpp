#include "netshrink/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "netshrink/error.hpp"
#include "netshrink/seeding.hpp"

namespace netshrink {

GeneratorModel parse_generator_model(std::string_view name) {
  if (name == "er" || name == "ER") return GeneratorModel::kErdosRenyi;
  if (name == "ba" || name == "BA") return GeneratorModel::kBarabasiAlbert;
  fail(ErrorKind::kConfig, "unknown generator model '" + std::string(name) + "'");
}

void validate(const GeneratorSpec& spec) {
  require(spec.n >= 2, ErrorKind::kConfig, "generator needs n >= 2");
  if (spec.model == GeneratorModel::kErdosRenyi) {
    // p = 0 and p = 1 are accepted as degenerate endpoints.
    require(spec.target_avg_degree >= 0.0 &&
                spec.target_avg_degree <= static_cast<double>(spec.n - 1),
            ErrorKind::kConfig, "ER average degree must lie in [0, n-1]");
  } else {
    require(spec.m >= 1 && spec.m < spec.n, ErrorKind::kConfig, "BA needs 1 <= m < n");
  }
}

Graph erdos_renyi(const GeneratorSpec& spec) {
  require(spec.model == GeneratorModel::kErdosRenyi, ErrorKind::kConfig,
          "erdos_renyi called with a non-ER spec");
  validate(spec);
  const double p = spec.target_avg_degree / static_cast<double>(spec.n - 1);
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  if (p >= 1.0) {
    for (NodeIndex v = 1; v < spec.n; ++v)
      for (NodeIndex u = 0; u < v; ++u) edges.emplace_back(u, v);
    return Graph::from_index_edges(spec.n, edges);
  }
  if (p <= 0.0) return Graph::from_index_edges(spec.n, edges);

  // Batagelj–Brandes: jump over runs of absent pairs (v, w) with w < v.
  Rng rng(spec.seed);
  std::geometric_distribution<std::int64_t> skip(p);
  edges.reserve(static_cast<std::size_t>(p * spec.n * (spec.n - 1) / 2 * 1.1) + 16);
  const auto n = static_cast<std::int64_t>(spec.n);
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    w += 1 + skip(rng);
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) edges.emplace_back(static_cast<NodeIndex>(w), static_cast<NodeIndex>(v));
  }
  return Graph::from_index_edges(spec.n, edges);
}

Graph barabasi_albert(const GeneratorSpec& spec) {
  require(spec.model == GeneratorModel::kBarabasiAlbert, ErrorKind::kConfig,
          "barabasi_albert called with a non-BA spec");
  validate(spec);
  const std::size_t m = spec.m;
  Rng rng(spec.seed);

  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  edges.reserve(m * (m - 1) / 2 + m * (spec.n - m));
  // Each endpoint appears once per incident edge: uniform draws from this
  // list are degree-proportional.
  std::vector<NodeIndex> endpoints;
  endpoints.reserve(2 * edges.capacity());
  for (NodeIndex v = 1; v < m; ++v) {
    for (NodeIndex u = 0; u < v; ++u) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }

  std::vector<NodeIndex> targets;
  targets.reserve(m);
  for (NodeIndex node = static_cast<NodeIndex>(m); node < spec.n; ++node) {
    targets.clear();
    if (endpoints.empty()) {
      // m = 1: the seed is a single isolated node.
      targets.push_back(0);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
      while (targets.size() < m) {
        const NodeIndex candidate = endpoints[pick(rng)];
        if (std::find(targets.begin(), targets.end(), candidate) == targets.end()) {
          targets.push_back(candidate);
        }
      }
    }
    for (NodeIndex t : targets) {
      edges.emplace_back(t, node);
      endpoints.push_back(t);
      endpoints.push_back(node);
    }
  }
  return Graph::from_index_edges(spec.n, edges);
}

Graph generate(const GeneratorSpec& spec) {
  return spec.model == GeneratorModel::kErdosRenyi ? erdos_renyi(spec) : barabasi_albert(spec);
}

}  // namespace netshrink
