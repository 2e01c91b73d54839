#include <doctest.h>

#include <algorithm>
#include <set>

#include "netshrink/error.hpp"
#include "netshrink/generators.hpp"
#include "netshrink/reduction.hpp"
#include "support.hpp"

using namespace netshrink;
using namespace netshrink::testing;

namespace {

ReductionParams with_q(double q, bool fallback = false) {
  ReductionParams p;
  p.q = q;
  p.lcc_fallback = fallback;
  return p;
}

// Straightforward re-statement of the pruning procedure: adjacency sets, a
// full BFS after every tentative removal.
struct NaivePrune {
  std::vector<Edge> pruned;
  bool stalled = false;
  std::size_t edges = 0;
};

bool connected_sets(const std::vector<std::set<std::size_t>>& adj) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (auto v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
  }
  return count == adj.size();
}

NaivePrune naive_prune(const Graph& g, double target, std::size_t k_min, double tol) {
  const std::size_t n = g.num_nodes();
  std::vector<std::set<std::size_t>> adj(n);
  for (NodeIndex u = 0; u < n; ++u)
    for (auto v : g.neighbors(u)) adj[u].insert(v);
  NaivePrune out;
  out.edges = g.num_edges();
  auto close = [&] { return 2.0 * double(out.edges) / double(n) - target < tol; };
  if (close()) return out;
  while (true) {
    std::size_t removed = 0;
    for (std::size_t u = 0; u < n; ++u) {
      if (adj[u].size() <= k_min) continue;
      std::size_t v = *adj[u].begin();
      for (auto w : adj[u])
        if (adj[w].size() < adj[v].size()) v = w;
      adj[u].erase(v);
      adj[v].erase(u);
      if (connected_sets(adj)) {
        out.pruned.emplace_back(g.label(NodeIndex(u)), g.label(NodeIndex(v)));
        --out.edges;
        ++removed;
      } else {
        adj[u].insert(v);
        adj[v].insert(u);
      }
      if (close()) return out;
    }
    if (removed == 0) {
      out.stalled = true;
      return out;
    }
  }
}

}  // namespace

TEST_CASE("level schedule") {
  CHECK(removal_ratio_for_level(0) == 0.0);
  CHECK(removal_ratio_for_level(1) == 0.5);
  CHECK(removal_ratio_for_level(3) == 0.875);
}

TEST_CASE("nrdc with q = 0 is the identity") {
  const Graph g = random_connected(30, 30, 2);
  const Reduction r = nrdc(g, with_q(0.0));
  CHECK(r.graph == g);
  CHECK(r.trace.removed_nodes.empty());
}

TEST_CASE("nrdc on a star removes the lowest-label leaves") {
  const Reduction r = nrdc(star(5), with_q(0.5));
  CHECK(r.trace.removed_nodes == std::vector<Label>{1, 2, 3});
  CHECK(r.graph.num_nodes() == 3);
  CHECK(average_degree(r.graph) == doctest::Approx(4.0 / 3.0));
  CHECK(r.graph.index_of(0).has_value());
}

TEST_CASE("nrdc removes floor(qN) nodes and nests across q") {
  const Graph g = generate({GeneratorModel::kBarabasiAlbert, 400, 0.0, 3, 5});
  std::vector<Label> previous(g.labels().begin(), g.labels().end());
  for (double q : {0.1, 0.25, 0.5, 0.75, 0.875}) {
    const Reduction r = nrdc(g, with_q(q));
    CHECK(r.graph.num_nodes() == 400 - std::size_t(q * 400 + 1e-9));
    CHECK(r.graph.is_valid());
    std::vector<Label> survivors(r.graph.labels().begin(), r.graph.labels().end());
    CHECK(std::includes(previous.begin(), previous.end(), survivors.begin(), survivors.end()));
    previous = survivors;
  }
}

TEST_CASE("nrdc ranks on the original degrees") {
  // Path 0-1-2-3-4 plus a pendant at 2: degrees 1,2,3,2,1,1.
  const Graph g = make_graph({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}});
  const Reduction r = nrdc(g, with_q(0.5));
  CHECK(r.trace.removed_nodes == std::vector<Label>{0, 4, 5});
}

TEST_CASE("nrdc lcc fallback") {
  const Graph g = make_graph({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
  // Degrees: 0 and 6 are 1, the rest 2; removing 0,6,1 leaves 2-3-4-5 path.
  const Reduction plain = nrdc(g, with_q(0.5));
  CHECK(plain.graph.num_nodes() == 4);
  const Graph h = make_graph({{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 7}, {7, 4}, {1, 8}, {8, 9}});
  const Reduction fb = nrdc(h, with_q(0.2, true));
  CHECK(is_connected(fb.graph));
  CHECK(fb.trace.connected_after);
}

TEST_CASE("nrdc errors") {
  CHECK_THROWS_AS(nrdc(complete_graph(4), with_q(1.0)), Error);
  CHECK_THROWS_AS(nrdc(complete_graph(4), with_q(-0.1)), Error);
  CHECK_THROWS_AS(nrdc(complete_graph(4), with_q(0.1)), Error);  // floor(0.4) = 0
}

TEST_CASE("edge pruning on K4") {
  const Reduction r = edge_prune(complete_graph(4), 2.1, 2);
  CHECK(r.trace.pruned_edges == std::vector<Edge>{{0, 1}, {2, 0}});
  CHECK(r.graph.num_edges() == 4);
  CHECK(average_degree(r.graph) == 2.0);
  CHECK(is_connected(r.graph));
  CHECK_FALSE(r.trace.stalled);
}

TEST_CASE("edge pruning leaves sparse graphs alone") {
  const Graph g = ring(12);
  const Reduction r = edge_prune(g, 3.0, 1);
  CHECK(r.graph == g);
  CHECK_FALSE(r.trace.pruning_applied);
}

TEST_CASE("edge pruning rejects disconnected input") {
  try {
    edge_prune(make_graph({{0, 1}, {2, 3}}), 0.5, 1);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kPrecondition);
  }
}

TEST_CASE("edge pruning stalls on a tree") {
  const Reduction r = edge_prune(star(6), 0.5, 1);
  CHECK(r.trace.stalled);
  CHECK(r.graph.num_edges() == 6);
}

TEST_CASE("edge pruning matches a naive re-statement") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 20 + seed;
    const Graph g = random_connected(n, 3 * n, seed);
    const double target = average_degree(g) * 0.6;
    const std::size_t k_min = 1 + seed % 3;
    const Reduction r = edge_prune(g, target, k_min);
    const NaivePrune oracle = naive_prune(g, target, k_min, 0.1);
    CHECK(r.trace.pruned_edges == oracle.pruned);
    CHECK(r.trace.stalled == oracle.stalled);
    CHECK(r.graph.num_edges() == oracle.edges);
  }
}

TEST_CASE("edge pruning invariants") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const std::size_t n = 40;
    const Graph g = random_connected(n, 4 * n, seed);
    const double target = 3.0;
    const Reduction r = edge_prune(g, target, 2);
    CHECK(is_connected(r.graph));
    CHECK(r.graph.is_valid());
    CHECK(r.graph.num_nodes() == g.num_nodes());
    CHECK(r.trace.pruned_edges.size() == g.num_edges() - r.graph.num_edges());
    CHECK(r.trace.avg_degree_after == average_degree(r.graph));
    for (const auto& e : r.graph.edges()) {
      CHECK(g.has_edge(*g.index_of(e.first), *g.index_of(e.second)));
    }
    const double gap = r.trace.avg_degree_after - target;
    CHECK(gap < 0.1);
    // One edge moves <k> by 2/N; the lower bound only holds when that step
    // is finer than the tolerance.
    if (2.0 / double(n) <= 0.1) {
      CHECK((gap >= 0.0 || r.trace.stalled));
    }
    const Reduction again = edge_prune(g, target, 2);
    CHECK(again.trace.pruned_edges == r.trace.pruned_edges);
  }
}

TEST_CASE("nrdc_prime") {
  SUBCASE("q = 0 is the identity") {
    const Graph g = random_connected(30, 40, 3);
    CHECK(nrdc_prime(g, with_q(0.0)).graph == g);
  }
  SUBCASE("ER subgraphs are never pruned") {
    const Graph g = generate({GeneratorModel::kErdosRenyi, 1000, 10.0, 0, 4});
    for (double q : {0.5, 0.75}) {
      const Reduction r = nrdc_prime(g, with_q(q, true));
      CHECK_FALSE(r.trace.pruning_applied);
      CHECK(r.trace.avg_degree_after < average_degree(g));
    }
  }
  SUBCASE("BA subgraphs are pruned back toward the original degree") {
    const Graph g = generate({GeneratorModel::kBarabasiAlbert, 2000, 0.0, 3, 4});
    const double k0 = average_degree(g);
    const Reduction r = nrdc_prime(g, with_q(0.75, true));
    CHECK(is_connected(r.graph));
    if (r.trace.pruning_applied && !r.trace.stalled) {
      CHECK(r.trace.avg_degree_after - k0 < 0.1);
      CHECK(r.trace.avg_degree_after - k0 >= 0.0);
    }
  }
}

TEST_CASE("degree evolution") {
  const Graph g = random_connected(200, 400, 8);
  const auto rows = degree_evolution(g, {0.0, 0.5});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].relative_avg_degree == 1.0);
  CHECK(rows[0].s_lcc == 1.0);
  CHECK(rows[1].q == 0.5);
  CHECK_THROWS_AS(degree_evolution(g, {0.95}), Error);
}
