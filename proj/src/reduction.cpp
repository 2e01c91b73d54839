#include "netshrink/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "netshrink/error.hpp"

namespace netshrink {
namespace {

std::size_t removal_count(double q, std::size_t n) {
  if (q == 0.0) return 0;
  // The epsilon absorbs products like 0.29 * 100 = 28.999999999999996.
  const auto count = static_cast<std::size_t>(std::floor(q * static_cast<double>(n) + 1e-9));
  return std::min(count, n - 1);
}

// Mutable adjacency used while pruning. Neighbor lists stay sorted.
class PruningState {
 public:
  explicit PruningState(const Graph& g)
      : adjacency_(g.num_nodes()), visit_stamp_(g.num_nodes(), 0), edges_(g.num_edges()) {
    for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
      auto nbrs = g.neighbors(u);
      adjacency_[u].assign(nbrs.begin(), nbrs.end());
    }
  }

  std::size_t degree(NodeIndex u) const { return adjacency_[u].size(); }
  std::size_t num_edges() const { return edges_; }
  const std::vector<std::vector<NodeIndex>>& adjacency() const { return adjacency_; }

  NodeIndex lowest_degree_neighbor(NodeIndex u) const {
    const auto& nbrs = adjacency_[u];
    NodeIndex best = nbrs.front();
    for (NodeIndex v : nbrs) {
      if (degree(v) < degree(best)) best = v;  // ascending scan keeps the smallest label on ties
    }
    return best;
  }

  void remove_edge(NodeIndex u, NodeIndex v) {
    erase_sorted(adjacency_[u], v);
    erase_sorted(adjacency_[v], u);
    --edges_;
  }

  void add_edge(NodeIndex u, NodeIndex v) {
    insert_sorted(adjacency_[u], v);
    insert_sorted(adjacency_[v], u);
    ++edges_;
  }

  // Reachability of `to` from `from`; enough to decide connectivity after
  // deleting edge (from, to) from a connected graph.
  bool reachable(NodeIndex from, NodeIndex to) {
    if (adjacency_[from].empty() || adjacency_[to].empty()) return false;
    ++epoch_;
    stack_.clear();
    stack_.push_back(from);
    visit_stamp_[from] = epoch_;
    while (!stack_.empty()) {
      const NodeIndex x = stack_.back();
      stack_.pop_back();
      for (NodeIndex y : adjacency_[x]) {
        if (y == to) return true;
        if (visit_stamp_[y] != epoch_) {
          visit_stamp_[y] = epoch_;
          stack_.push_back(y);
        }
      }
    }
    return false;
  }

 private:
  static void erase_sorted(std::vector<NodeIndex>& list, NodeIndex x) {
    list.erase(std::lower_bound(list.begin(), list.end(), x));
  }
  static void insert_sorted(std::vector<NodeIndex>& list, NodeIndex x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  }

  std::vector<std::vector<NodeIndex>> adjacency_;
  std::vector<std::uint32_t> visit_stamp_;
  std::vector<NodeIndex> stack_;
  std::uint32_t epoch_ = 0;
  std::size_t edges_;
};

}  // namespace

double removal_ratio_for_level(unsigned level) {
  return 1.0 - std::ldexp(1.0, -static_cast<int>(level));
}

void validate(const ReductionParams& params) {
  require(params.q >= 0.0 && params.q < 1.0, ErrorKind::kConfig,
          "removal ratio q must lie in [0, 1), got " + std::to_string(params.q));
  require(params.k_min >= 1, ErrorKind::kConfig, "k_min must be at least 1");
  require(params.degree_tolerance > 0.0, ErrorKind::kConfig,
          "degree tolerance must be positive");
}

Reduction nrdc(const Graph& g, const ReductionParams& params) {
  validate(params);
  require(g.num_nodes() >= 2, ErrorKind::kDomain, "node removal needs at least two nodes");
  const std::size_t n = g.num_nodes();
  const std::size_t count = removal_count(params.q, n);
  require(params.q == 0.0 || count >= 1, ErrorKind::kConfig,
          "q * N must be at least 1 (q = " + std::to_string(params.q) +
              ", N = " + std::to_string(n) + ")");

  // One-shot ranking against the original degrees; index order is label order.
  std::vector<NodeIndex> order(n);
  std::iota(order.begin(), order.end(), NodeIndex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&g](NodeIndex a, NodeIndex b) { return g.degree(a) < g.degree(b); });

  Reduction result;
  result.trace.avg_degree_before = average_degree(g);
  result.trace.removed_nodes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) result.trace.removed_nodes.push_back(g.label(order[i]));
  result.graph = count == 0 ? g
                            : g.induced_subgraph(std::span<const NodeIndex>(order).subspan(count));

  bool connected = is_connected(result.graph);
  if (!connected && params.lcc_fallback) {
    Graph lcc = largest_connected_component(result.graph);
    for (Label l : result.graph.labels()) {
      if (!lcc.index_of(l)) result.trace.lcc_dropped_nodes.push_back(l);
    }
    result.graph = std::move(lcc);
    connected = true;
  }
  result.trace.avg_degree_after = average_degree(result.graph);
  result.trace.connected_after = connected;
  return result;
}

Reduction edge_prune(const Graph& g, double target_avg_degree, std::size_t k_min,
                     double degree_tolerance) {
  require(!g.empty(), ErrorKind::kDomain, "edge pruning of an empty graph");
  require(is_connected(g), ErrorKind::kPrecondition, "edge pruning needs a connected graph");
  require(degree_tolerance > 0.0, ErrorKind::kConfig, "degree tolerance must be positive");

  Reduction result;
  result.trace.avg_degree_before = average_degree(g);
  result.trace.connected_after = true;
  const double n = static_cast<double>(g.num_nodes());
  auto within_tolerance = [&](std::size_t edges) {
    return 2.0 * static_cast<double>(edges) / n - target_avg_degree < degree_tolerance;
  };
  if (within_tolerance(g.num_edges())) {
    result.graph = g;
    result.trace.avg_degree_after = result.trace.avg_degree_before;
    return result;
  }

  result.trace.pruning_applied = true;
  PruningState state(g);
  bool done = false;
  while (!done) {
    ++result.trace.sweeps;
    std::size_t removed_this_sweep = 0;
    for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
      if (state.degree(u) <= k_min) continue;
      const NodeIndex v = state.lowest_degree_neighbor(u);
      state.remove_edge(u, v);
      if (state.reachable(v, u)) {
        result.trace.pruned_edges.emplace_back(g.label(u), g.label(v));
        ++removed_this_sweep;
      } else {
        state.add_edge(u, v);
      }
      if (within_tolerance(state.num_edges())) {
        done = true;
        break;
      }
    }
    if (!done && removed_this_sweep == 0) {
      result.trace.stalled = true;
      done = true;
    }
  }

  result.graph = Graph::from_adjacency(
      std::vector<Label>(g.labels().begin(), g.labels().end()), state.adjacency());
  result.trace.avg_degree_after = average_degree(result.graph);
  return result;
}

Reduction nrdc_prime(const Graph& g, const ReductionParams& params) {
  validate(params);
  Reduction result = nrdc(g, params);
  const double original = result.trace.avg_degree_before;
  if (result.trace.avg_degree_after <= original) return result;

  Reduction pruned = edge_prune(result.graph, original, params.k_min, params.degree_tolerance);
  result.graph = std::move(pruned.graph);
  result.trace.pruned_edges = std::move(pruned.trace.pruned_edges);
  result.trace.pruning_applied = pruned.trace.pruning_applied;
  result.trace.stalled = pruned.trace.stalled;
  result.trace.sweeps = pruned.trace.sweeps;
  result.trace.avg_degree_after = pruned.trace.avg_degree_after;
  result.trace.connected_after = true;
  return result;
}

std::vector<DegreeEvolutionRow> degree_evolution(const Graph& g,
                                                 const std::vector<double>& q_grid) {
  const double original = average_degree(g);
  std::vector<DegreeEvolutionRow> rows;
  rows.reserve(q_grid.size());
  for (double q : q_grid) {
    require(q >= 0.0 && q <= 0.9, ErrorKind::kConfig, "degree evolution q must lie in [0, 0.9]");
    ReductionParams params;
    params.q = q;
    const Graph sub = nrdc(g, params).graph;
    std::size_t largest = 0;
    for (const auto& c : connected_components(sub)) largest = std::max(largest, c.size());
    rows.push_back({q, average_degree(sub) / original,
                    static_cast<double>(largest) / static_cast<double>(sub.num_nodes())});
  }
  return rows;
}

}  // namespace netshrink
