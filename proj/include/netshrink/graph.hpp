#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace netshrink {

// Opaque node identifier supplied by the caller. Labels survive every
// subgraph operation so a node can be tracked across reduction levels.
using Label = std::uint64_t;

// Dense position of a node inside one particular Graph, in ascending label
// order. Indices are not stable across graphs; labels are.
using NodeIndex = std::uint32_t;

using Edge = std::pair<Label, Label>;

// Immutable undirected simple graph in compressed adjacency form.
//
// Nodes are stored in ascending label order and every neighbor list is
// sorted, so all iteration is deterministic. There are no self-loops and no
// parallel edges; adjacency is symmetric.
class Graph {
 public:
  Graph() = default;

  // Self-loops are dropped and duplicate or reversed-duplicate edges are
  // collapsed. `extra_nodes` adds labels that may have no incident edge.
  static Graph from_edges(std::span<const Edge> edges,
                          std::span<const Label> extra_nodes = {});

  // Nodes labelled 0..n-1 with edges given by index pairs.
  static Graph from_index_edges(
      std::size_t n, std::span<const std::pair<NodeIndex, NodeIndex>> edges);

  // `labels` must be strictly increasing; `adjacency[i]` lists neighbor
  // indices of node i and must already be symmetric and loop-free.
  static Graph from_adjacency(std::vector<Label> labels,
                              const std::vector<std::vector<NodeIndex>>& adjacency);

  std::size_t num_nodes() const { return labels_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  bool empty() const { return labels_.empty(); }

  Label label(NodeIndex i) const { return labels_[i]; }
  std::span<const Label> labels() const { return labels_; }
  std::optional<NodeIndex> index_of(Label label) const;

  std::span<const NodeIndex> neighbors(NodeIndex i) const {
    return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::size_t degree(NodeIndex i) const { return offsets_[i + 1] - offsets_[i]; }
  std::vector<std::size_t> degrees() const;
  std::size_t max_degree() const;

  bool has_edge(NodeIndex u, NodeIndex v) const;

  // Edges as label pairs with first < second, in ascending order.
  std::vector<Edge> edges() const;

  // Subgraph induced by `keep` (any order, duplicates ignored). Original
  // labels are preserved.
  Graph induced_subgraph(std::span<const NodeIndex> keep) const;

  // Copy relabelled to 0..n-1 in ascending label order. Export helper only.
  Graph compacted() const;

  // Full scan of the structural invariants; used by tests.
  bool is_valid() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<Label> labels_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeIndex> adjacency_;
  std::size_t num_edges_ = 0;
};

struct NetworkSummary {
  std::size_t n = 0;
  std::size_t m = 0;
  double avg_degree = 0.0;
  double heterogeneity = 0.0;
  std::size_t n_lcc = 0;
  double s_lcc = 0.0;
};

// 2M/N. Throws a domain error on the empty graph.
double average_degree(const Graph& g);

// Connected components as sorted node-index lists, ordered by their smallest
// label.
std::vector<std::vector<NodeIndex>> connected_components(const Graph& g);

// Induced subgraph on the largest component; ties go to the component with
// the smaller minimum label.
Graph largest_connected_component(const Graph& g);

bool is_connected(const Graph& g);

// Degree heterogeneity index H in [0, 1): the Gini coefficient of the degree
// sequence, i.e. twice the area between the line of equality and the degree
// Lorenz curve. Zero exactly for regular graphs. Requires n >= 2.
double heterogeneity_index(const Graph& g);

NetworkSummary summarize(const Graph& g);

}  // namespace netshrink
