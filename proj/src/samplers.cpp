#include "netshrink/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "netshrink/error.hpp"
#include "netshrink/seeding.hpp"

namespace netshrink {
namespace {

constexpr double kWeightFloor = 1e-6;

std::size_t common_neighbors(const Graph& g, NodeIndex u, NodeIndex v) {
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

// Runs `step` from a uniform start until `target` distinct nodes of `walked`
// have been visited, then returns the induced subgraph of `walked`.
template <typename Step>
Graph collect_walk(const Graph& walked, std::size_t target, std::size_t burn_in, Rng& rng,
                   Step step) {
  std::uniform_int_distribution<NodeIndex> start_dist(
      0, static_cast<NodeIndex>(walked.num_nodes() - 1));
  NodeIndex current = start_dist(rng);
  for (std::size_t i = 0; i < burn_in; ++i) current = step(current);

  std::vector<bool> visited(walked.num_nodes(), false);
  std::vector<NodeIndex> collected;
  collected.reserve(target);
  visited[current] = true;
  collected.push_back(current);
  while (collected.size() < target) {
    current = step(current);
    if (!visited[current]) {
      visited[current] = true;
      collected.push_back(current);
    }
  }
  return walked.induced_subgraph(collected);
}

Graph walk_domain(const Graph& g) {
  return is_connected(g) ? g : largest_connected_component(g);
}

}  // namespace

SamplerMethod parse_sampler_method(std::string_view name) {
  if (name == "rdn") return SamplerMethod::kRandomNode;
  if (name == "mhrw") return SamplerMethod::kMetropolisHastingsWalk;
  if (name == "cnarw") return SamplerMethod::kCommonNeighborAwareWalk;
  fail(ErrorKind::kConfig, "unknown sampler '" + std::string(name) + "'");
}

const char* to_string(SamplerMethod method) {
  switch (method) {
    case SamplerMethod::kRandomNode: return "rdn";
    case SamplerMethod::kMetropolisHastingsWalk: return "mhrw";
    case SamplerMethod::kCommonNeighborAwareWalk: return "cnarw";
  }
  return "?";
}

void validate(const SamplerSpec& spec) {
  require(spec.sr > 0.0 && spec.sr <= 1.0, ErrorKind::kConfig,
          "sampling rate must lie in (0, 1], got " + std::to_string(spec.sr));
}

std::size_t sample_size(double sr, std::size_t n) {
  const auto k = static_cast<std::size_t>(std::ceil(sr * static_cast<double>(n) - 1e-9));
  return std::clamp<std::size_t>(k, 1, n);
}

Graph random_node_sample(const Graph& g, const SamplerSpec& spec) {
  validate(spec);
  require(!g.empty(), ErrorKind::kDomain, "sampling an empty graph");
  const std::size_t k = sample_size(spec.sr, g.num_nodes());
  if (k == g.num_nodes()) return g;
  std::vector<NodeIndex> all(g.num_nodes());
  std::iota(all.begin(), all.end(), NodeIndex{0});
  std::vector<NodeIndex> chosen;
  chosen.reserve(k);
  Rng rng(spec.seed);
  std::sample(all.begin(), all.end(), std::back_inserter(chosen), k, rng);
  return g.induced_subgraph(chosen);
}

std::vector<NodeIndex> mhrw_trajectory(const Graph& g, NodeIndex start, std::size_t steps,
                                       std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<NodeIndex> path{start};
  NodeIndex u = start;
  for (std::size_t i = 0; i < steps; ++i) {
    auto nbrs = g.neighbors(u);
    if (!nbrs.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, nbrs.size() - 1);
      const NodeIndex v = nbrs[pick(rng)];
      const double accept = static_cast<double>(g.degree(u)) / static_cast<double>(g.degree(v));
      if (accept >= 1.0 || unit(rng) < accept) u = v;
    }
    path.push_back(u);
  }
  return path;
}

Graph mhrw_sample(const Graph& g, const SamplerSpec& spec) {
  validate(spec);
  require(!g.empty(), ErrorKind::kDomain, "sampling an empty graph");
  const Graph walked = walk_domain(g);
  const std::size_t target = std::min(sample_size(spec.sr, g.num_nodes()), walked.num_nodes());
  if (target == walked.num_nodes()) return walked;

  Rng rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto step = [&](NodeIndex u) {
    auto nbrs = walked.neighbors(u);
    std::uniform_int_distribution<std::size_t> pick(0, nbrs.size() - 1);
    const NodeIndex v = nbrs[pick(rng)];
    const double accept =
        static_cast<double>(walked.degree(u)) / static_cast<double>(walked.degree(v));
    return (accept >= 1.0 || unit(rng) < accept) ? v : u;
  };
  return collect_walk(walked, target, spec.burn_in, rng, step);
}

std::vector<double> cnarw_weights(const Graph& g, NodeIndex u) {
  std::vector<double> weights;
  weights.reserve(g.degree(u));
  for (NodeIndex v : g.neighbors(u)) {
    const double shared = static_cast<double>(common_neighbors(g, u, v));
    const double smaller = static_cast<double>(std::min(g.degree(u), g.degree(v)));
    weights.push_back(std::max(1.0 - shared / smaller, kWeightFloor));
  }
  return weights;
}

Graph cnarw_sample(const Graph& g, const SamplerSpec& spec) {
  validate(spec);
  require(!g.empty(), ErrorKind::kDomain, "sampling an empty graph");
  const Graph walked = walk_domain(g);
  const std::size_t target = std::min(sample_size(spec.sr, g.num_nodes()), walked.num_nodes());
  if (target == walked.num_nodes()) return walked;

  // Transition tables are built lazily; walks touch a fraction of the graph.
  std::vector<std::vector<double>> cumulative(walked.num_nodes());
  Rng rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto step = [&](NodeIndex u) {
    auto& table = cumulative[u];
    if (table.empty()) {
      table = cnarw_weights(walked, u);
      std::partial_sum(table.begin(), table.end(), table.begin());
    }
    const double x = unit(rng) * table.back();
    const auto pos = std::upper_bound(table.begin(), table.end(), x) - table.begin();
    return walked.neighbors(u)[std::min<std::size_t>(pos, table.size() - 1)];
  };
  return collect_walk(walked, target, spec.burn_in, rng, step);
}

Graph sample(const Graph& g, const SamplerSpec& spec) {
  switch (spec.method) {
    case SamplerMethod::kRandomNode: return random_node_sample(g, spec);
    case SamplerMethod::kMetropolisHastingsWalk: return mhrw_sample(g, spec);
    case SamplerMethod::kCommonNeighborAwareWalk: return cnarw_sample(g, spec);
  }
  fail(ErrorKind::kConfig, "unknown sampler");
}

}  // namespace netshrink
