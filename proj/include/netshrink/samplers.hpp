#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "netshrink/graph.hpp"

namespace netshrink {

enum class SamplerMethod { kRandomNode, kMetropolisHastingsWalk, kCommonNeighborAwareWalk };

SamplerMethod parse_sampler_method(std::string_view name);
const char* to_string(SamplerMethod method);

struct SamplerSpec {
  SamplerMethod method = SamplerMethod::kRandomNode;
  double sr = 1.0;  // target node fraction, in (0, 1]
  std::uint64_t seed = 0;
  std::size_t burn_in = 0;  // walk steps taken before collection starts
};

void validate(const SamplerSpec& spec);

// ceil(sr * n), at least 1.
std::size_t sample_size(double sr, std::size_t n);

// Uniform sample of ceil(sr N) nodes without replacement; induced subgraph.
Graph random_node_sample(const Graph& g, const SamplerSpec& spec);

// Metropolis–Hastings walk targeting the uniform node distribution: from u a
// uniform neighbor v is accepted with probability min(1, deg u / deg v).
// Disconnected inputs are walked on their LCC, and the target count is then
// capped at the LCC size.
Graph mhrw_sample(const Graph& g, const SamplerSpec& spec);

// Walk whose next hop from u is drawn proportional to
// max(1 - |CN(u, v)| / min(deg u, deg v), 1e-6), discounting neighbors that
// share many common neighbors with u. Same LCC handling as mhrw_sample.
Graph cnarw_sample(const Graph& g, const SamplerSpec& spec);

Graph sample(const Graph& g, const SamplerSpec& spec);

// Sequence of node indices visited by a Metropolis–Hastings walk of `steps`
// steps (including rejected moves, which repeat the current node). Exposed for
// stationarity checks.
std::vector<NodeIndex> mhrw_trajectory(const Graph& g, NodeIndex start, std::size_t steps,
                                       std::uint64_t seed);

// CNARW transition weights from u to each neighbor, in neighbor order.
std::vector<double> cnarw_weights(const Graph& g, NodeIndex u);

}  // namespace netshrink
