#include "netshrink/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "netshrink/error.hpp"

namespace netshrink {
namespace {

using IndexEdge = std::pair<NodeIndex, NodeIndex>;

}  // namespace

Graph Graph::from_edges(std::span<const Edge> edges,
                        std::span<const Label> extra_nodes) {
  std::vector<Label> labels(extra_nodes.begin(), extra_nodes.end());
  labels.reserve(labels.size() + 2 * edges.size());
  for (const auto& [u, v] : edges) {
    labels.push_back(u);
    labels.push_back(v);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  auto index = [&labels](Label l) {
    return static_cast<NodeIndex>(
        std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
  };
  std::vector<std::vector<NodeIndex>> adjacency(labels.size());
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    const NodeIndex a = index(u);
    const NodeIndex b = index(v);
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  for (auto& list : adjacency) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return from_adjacency(std::move(labels), adjacency);
}

Graph Graph::from_index_edges(std::size_t n, std::span<const IndexEdge> edges) {
  std::vector<std::vector<NodeIndex>> adjacency(n);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }
  for (auto& list : adjacency) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  std::vector<Label> labels(n);
  std::iota(labels.begin(), labels.end(), Label{0});
  return from_adjacency(std::move(labels), adjacency);
}

Graph Graph::from_adjacency(std::vector<Label> labels,
                            const std::vector<std::vector<NodeIndex>>& adjacency) {
  Graph g;
  g.labels_ = std::move(labels);
  g.offsets_.assign(g.labels_.size() + 1, 0);
  std::size_t total = 0;
  for (std::size_t i = 0; i < adjacency.size(); ++i) {
    total += adjacency[i].size();
    g.offsets_[i + 1] = total;
  }
  g.adjacency_.reserve(total);
  for (const auto& list : adjacency) {
    const auto start = g.adjacency_.size();
    g.adjacency_.insert(g.adjacency_.end(), list.begin(), list.end());
    if (!std::is_sorted(g.adjacency_.begin() + start, g.adjacency_.end())) {
      std::sort(g.adjacency_.begin() + start, g.adjacency_.end());
    }
  }
  g.num_edges_ = total / 2;
  return g;
}

std::optional<NodeIndex> Graph::index_of(Label label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<NodeIndex>(it - labels_.begin());
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(num_nodes());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = offsets_[i + 1] - offsets_[i];
  return out;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t i = 0; i < num_nodes(); ++i) best = std::max(best, degree(i));
  return best;
}

bool Graph::has_edge(NodeIndex u, NodeIndex v) const {
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (NodeIndex u = 0; u < num_nodes(); ++u) {
    for (NodeIndex v : neighbors(u)) {
      if (u < v) out.emplace_back(labels_[u], labels_[v]);
    }
  }
  return out;
}

Graph Graph::induced_subgraph(std::span<const NodeIndex> keep) const {
  std::vector<NodeIndex> nodes(keep.begin(), keep.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  constexpr NodeIndex kAbsent = static_cast<NodeIndex>(-1);
  std::vector<NodeIndex> remap(num_nodes(), kAbsent);
  std::vector<Label> labels(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    remap[nodes[i]] = static_cast<NodeIndex>(i);
    labels[i] = labels_[nodes[i]];
  }
  std::vector<std::vector<NodeIndex>> adjacency(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (NodeIndex v : neighbors(nodes[i])) {
      if (remap[v] != kAbsent) adjacency[i].push_back(remap[v]);
    }
  }
  return from_adjacency(std::move(labels), adjacency);
}

Graph Graph::compacted() const {
  Graph g = *this;
  std::iota(g.labels_.begin(), g.labels_.end(), Label{0});
  return g;
}

bool Graph::is_valid() const {
  if (offsets_.size() != labels_.size() + 1) return false;
  if (!std::is_sorted(labels_.begin(), labels_.end())) return false;
  if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) return false;
  std::size_t degree_sum = 0;
  for (NodeIndex u = 0; u < num_nodes(); ++u) {
    auto nbrs = neighbors(u);
    degree_sum += nbrs.size();
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      if (nbrs[k] >= num_nodes() || nbrs[k] == u) return false;
      if (k > 0 && nbrs[k - 1] >= nbrs[k]) return false;
      if (!has_edge(nbrs[k], u)) return false;
    }
  }
  return degree_sum == 2 * num_edges_;
}

double average_degree(const Graph& g) {
  require(!g.empty(), ErrorKind::kDomain, "average degree of an empty graph");
  return 2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(g.num_nodes());
}

std::vector<std::vector<NodeIndex>> connected_components(const Graph& g) {
  std::vector<std::vector<NodeIndex>> components;
  std::vector<bool> seen(g.num_nodes(), false);
  std::queue<NodeIndex> frontier;
  // Ascending start index means components come out ordered by smallest label.
  for (NodeIndex start = 0; start < g.num_nodes(); ++start) {
    if (seen[start]) continue;
    std::vector<NodeIndex> component;
    seen[start] = true;
    frontier.push(start);
    while (!frontier.empty()) {
      const NodeIndex u = frontier.front();
      frontier.pop();
      component.push_back(u);
      for (NodeIndex v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = true;
          frontier.push(v);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

Graph largest_connected_component(const Graph& g) {
  require(!g.empty(), ErrorKind::kDomain, "largest component of an empty graph");
  auto components = connected_components(g);
  if (components.size() == 1) return g;
  std::size_t best = 0;
  for (std::size_t c = 1; c < components.size(); ++c) {
    if (components[c].size() > components[best].size()) best = c;
  }
  return g.induced_subgraph(components[best]);
}

bool is_connected(const Graph& g) {
  require(!g.empty(), ErrorKind::kDomain, "connectivity of an empty graph");
  std::vector<bool> seen(g.num_nodes(), false);
  std::vector<NodeIndex> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeIndex u = stack.back();
    stack.pop_back();
    for (NodeIndex v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == g.num_nodes();
}

double heterogeneity_index(const Graph& g) {
  require(g.num_nodes() >= 2, ErrorKind::kDomain,
          "heterogeneity index needs at least two nodes");
  auto k = g.degrees();
  std::sort(k.begin(), k.end());
  const auto n = static_cast<std::int64_t>(k.size());
  // Integer accumulation keeps regular graphs at exactly zero.
  std::int64_t weighted = 0;
  std::int64_t total = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const auto ki = static_cast<std::int64_t>(k[i]);
    weighted += (2 * (i + 1) - n - 1) * ki;
    total += ki;
  }
  if (total == 0) return 0.0;
  return static_cast<double>(weighted) /
         (static_cast<double>(n) * static_cast<double>(total));
}

NetworkSummary summarize(const Graph& g) {
  require(g.num_nodes() >= 2, ErrorKind::kDomain, "summary needs at least two nodes");
  NetworkSummary s;
  s.n = g.num_nodes();
  s.m = g.num_edges();
  s.avg_degree = average_degree(g);
  s.heterogeneity = heterogeneity_index(g);
  std::size_t largest = 0;
  for (const auto& c : connected_components(g)) largest = std::max(largest, c.size());
  s.n_lcc = largest;
  s.s_lcc = static_cast<double>(largest) / static_cast<double>(s.n);
  return s;
}

}  // namespace netshrink
