#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "netshrink/edge_list.hpp"
#include "netshrink/error.hpp"
#include "netshrink/graph.hpp"
#include "support.hpp"

using namespace netshrink;
using namespace netshrink::testing;

TEST_CASE("from_edges drops loops and duplicate edges") {
  const Graph g = make_graph({{0, 1}, {1, 0}, {2, 2}, {1, 2}});
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 2);
  CHECK(g.is_valid());
}

TEST_CASE("empty edge list gives the empty graph") {
  const Graph g = Graph::from_edges({});
  CHECK(g.num_nodes() == 0);
  CHECK(g.num_edges() == 0);
  CHECK_THROWS_AS(average_degree(g), Error);
}

TEST_CASE("labels are opaque and preserved") {
  const Graph g = make_graph({{100, 7}, {7, 42}});
  REQUIRE(g.num_nodes() == 3);
  CHECK(g.label(0) == 7);
  CHECK(g.label(2) == 100);
  CHECK(g.index_of(42) == NodeIndex{1});
  CHECK_FALSE(g.index_of(5).has_value());
  const NodeIndex keep[] = {1, 2};
  const Graph sub = g.induced_subgraph(keep);
  CHECK(sub.labels()[0] == 42);
  CHECK(sub.labels()[1] == 100);
  CHECK(sub.num_edges() == 0);
  CHECK(sub.compacted().label(1) == 1);
}

TEST_CASE("average degree") {
  CHECK(average_degree(complete_graph(2)) == 1.0);
  CHECK(average_degree(complete_graph(3)) == 2.0);
}

TEST_CASE("average degree is invariant under edge permutation") {
  Rng rng(3);
  std::vector<Edge> edges = random_graph(40, 0.2, 9).edges();
  const double reference = average_degree(Graph::from_edges(edges));
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(edges.begin(), edges.end(), rng);
    for (auto& e : edges)
      if (rng() & 1) std::swap(e.first, e.second);
    const Graph g = Graph::from_edges(edges);
    CHECK(average_degree(g) == reference);
    CHECK(g == Graph::from_edges(random_graph(40, 0.2, 9).edges()));
  }
}

TEST_CASE("largest connected component") {
  SUBCASE("connected graph is returned unchanged") {
    const Graph g = complete_graph(5);
    CHECK(largest_connected_component(g) == g);
  }
  SUBCASE("tie goes to the component with the smaller minimum label") {
    const Graph g = make_graph({{10, 11}, {11, 12}, {10, 12}, {3, 4}, {4, 5}, {3, 5}, {0, 1}});
    const Graph lcc = largest_connected_component(g);
    REQUIRE(lcc.num_nodes() == 3);
    CHECK(lcc.label(0) == 3);
    CHECK(lcc.num_edges() == 3);
  }
  SUBCASE("idempotent") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Graph g = random_graph(60, 0.03, seed);
      const Graph once = largest_connected_component(g);
      CHECK(largest_connected_component(once) == once);
      CHECK(is_connected(once));
    }
  }
}

TEST_CASE("is_connected") {
  CHECK(is_connected(path(3)));
  CHECK_FALSE(is_connected(make_graph({{0, 1}, {2, 3}})));
}

TEST_CASE("heterogeneity index") {
  CHECK(heterogeneity_index(ring(10)) == 0.0);
  for (std::size_t k : {2, 3, 4, 7}) {
    CHECK(heterogeneity_index(complete_graph(k + 1)) == doctest::Approx(0.0).epsilon(1e-12));
  }
  const double h_star = heterogeneity_index(star(20));
  CHECK(h_star > 0.4);
  CHECK(h_star < 1.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double h = heterogeneity_index(random_graph(50, 0.1, seed));
    CHECK(h >= 0.0);
    CHECK(h <= 1.0);
  }
  CHECK_THROWS_AS(heterogeneity_index(isolated(1)), Error);
}

TEST_CASE("heterogeneity index matches a direct pairwise Gini computation") {
  // Mean absolute difference over all ordered pairs divided by twice the mean.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = random_connected(30, 25, seed);
    const auto k = g.degrees();
    double diff = 0.0;
    for (auto a : k)
      for (auto b : k) diff += std::abs(double(a) - double(b));
    const double n = double(k.size());
    const double mean = std::accumulate(k.begin(), k.end(), 0.0) / n;
    CHECK(heterogeneity_index(g) == doctest::Approx(diff / (2.0 * n * n * mean)).epsilon(1e-12));
  }
}

TEST_CASE("summary of K4") {
  const NetworkSummary s = summarize(complete_graph(4));
  CHECK(s.n == 4);
  CHECK(s.m == 6);
  CHECK(s.avg_degree == 3.0);
  CHECK(s.heterogeneity == 0.0);
  CHECK(s.s_lcc == 1.0);
}

TEST_CASE("summary fields are consistent") {
  const Graph g = random_graph(80, 0.03, 4);
  const NetworkSummary s = summarize(g);
  CHECK(s.avg_degree == 2.0 * double(s.m) / double(s.n));
  CHECK(s.n_lcc == largest_connected_component(g).num_nodes());
  CHECK(s.s_lcc == double(s.n_lcc) / double(s.n));
  const auto k = g.degrees();
  CHECK(std::accumulate(k.begin(), k.end(), std::size_t{0}) == 2 * g.num_edges());
}

TEST_CASE("edge list parsing") {
  std::istringstream in("# comment\n% other\n\n1 2\n2\t3 0.5\n3 3\n");
  const auto edges = parse_edge_list(in, "mem");
  CHECK(edges.size() == 3);
  const Graph g = Graph::from_edges(edges);
  CHECK(g.num_edges() == 2);

  std::istringstream bad("1 2\n1 x\n");
  try {
    parse_edge_list(bad, "bad.txt");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kData);
    CHECK(std::string(e.what()).find("bad.txt:2") != std::string::npos);
  }
  std::istringstream negative("-1 2\n");
  CHECK_THROWS_AS(parse_edge_list(negative), Error);
}

TEST_CASE("edge list round trip") {
  const Graph g = random_connected(30, 20, 1);
  std::stringstream buffer;
  write_edge_list(buffer, g);
  CHECK(Graph::from_edges(parse_edge_list(buffer)) == g);
}
