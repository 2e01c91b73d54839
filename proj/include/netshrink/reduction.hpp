#pragma once

#include <cstddef>
#include <vector>

#include "netshrink/graph.hpp"

namespace netshrink {

struct ReductionParams {
  double q = 0.0;                 // fraction of nodes removed, in [0, 1)
  std::size_t k_min = 2;          // nodes at or below this degree are not pruned from
  double degree_tolerance = 0.1;  // pruning stops once <k> - target < tolerance
  bool lcc_fallback = false;      // replace a disconnected result by its LCC
};

// q = 1 - 1/2^level: the subgraph keeps 1/2^level of the nodes.
double removal_ratio_for_level(unsigned level);

// Throws a config error on q outside [0, 1), k_min < 1 or tolerance <= 0.
void validate(const ReductionParams& params);

struct ReductionTrace {
  std::vector<Label> removed_nodes;     // in removal order
  std::vector<Label> lcc_dropped_nodes; // removed by the LCC fallback, ascending
  std::vector<Edge> pruned_edges;       // in pruning order, (swept node, neighbor)
  double avg_degree_before = 0.0;
  double avg_degree_after = 0.0;
  bool connected_after = false;
  bool pruning_applied = false;
  bool stalled = false;  // a full pruning sweep removed nothing
  std::size_t sweeps = 0;
};

struct Reduction {
  Graph graph;
  ReductionTrace trace;
};

// Node removal by degree centrality: ranks nodes once by (degree, label) in
// the input graph and deletes the floor(q N) lowest-ranked ones.
Reduction nrdc(const Graph& g, const ReductionParams& params);

// Connectivity-preserving edge pruning toward `target_avg_degree`.
//
// Sweeps nodes in ascending label order. A node u with deg(u) > k_min drops
// the edge to its lowest-degree neighbor (ties: smallest label) unless that
// disconnects the graph. Stops as soon as <k> - target < tolerance, or after
// a sweep that removed nothing (reported as `stalled`). Input must be
// connected; a graph already within tolerance is returned unchanged.
Reduction edge_prune(const Graph& g, double target_avg_degree, std::size_t k_min,
                     double degree_tolerance = 0.1);

// nrdc, then the LCC fallback, then pruning toward the input's average degree
// if the subgraph came out denser.
Reduction nrdc_prime(const Graph& g, const ReductionParams& params);

struct DegreeEvolutionRow {
  double q = 0.0;
  double relative_avg_degree = 0.0;  // <k>_s / <k>_0
  double s_lcc = 0.0;                // N_LCC / N_s
};

// One nrdc (without fallback) per q; q values must lie in [0, 0.9].
std::vector<DegreeEvolutionRow> degree_evolution(const Graph& g,
                                                 const std::vector<double>& q_grid);

}  // namespace netshrink
