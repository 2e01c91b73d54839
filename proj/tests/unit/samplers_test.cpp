#include <doctest.h>

#include <map>

#include "netshrink/error.hpp"
#include "netshrink/generators.hpp"
#include "netshrink/samplers.hpp"
#include "support.hpp"

using namespace netshrink;
using namespace netshrink::testing;

namespace {

SamplerSpec spec(SamplerMethod m, double sr, std::uint64_t seed) {
  SamplerSpec s;
  s.method = m;
  s.sr = sr;
  s.seed = seed;
  return s;
}

bool is_induced(const Graph& g, const Graph& sub) {
  std::size_t expected = 0;
  for (NodeIndex u = 0; u < sub.num_nodes(); ++u) {
    const NodeIndex gu = *g.index_of(sub.label(u));
    for (NodeIndex v = u + 1; v < sub.num_nodes(); ++v) {
      const bool in_g = g.has_edge(gu, *g.index_of(sub.label(v)));
      if (in_g != sub.has_edge(u, v)) return false;
      expected += in_g;
    }
  }
  return expected == sub.num_edges();
}

constexpr SamplerMethod kMethods[] = {SamplerMethod::kRandomNode,
                                      SamplerMethod::kMetropolisHastingsWalk,
                                      SamplerMethod::kCommonNeighborAwareWalk};

}  // namespace

TEST_CASE("sample size arithmetic") {
  CHECK(sample_size(1.0 / 8.0, 5000) == 625);
  CHECK(sample_size(1.0, 17) == 17);
  CHECK(sample_size(0.3, 10) == 3);
  CHECK(sample_size(1e-9, 10) == 1);
}

TEST_CASE("every sampler returns an induced subgraph of the right size") {
  const Graph g = generate({GeneratorModel::kBarabasiAlbert, 800, 0.0, 3, 2});
  for (SamplerMethod m : kMethods) {
    CAPTURE(to_string(m));
    for (double sr : {1.0, 0.5, 0.125}) {
      const Graph sub = sample(g, spec(m, sr, 7));
      CHECK(sub.num_nodes() == sample_size(sr, g.num_nodes()));
      CHECK(is_induced(g, sub));
      CHECK(sub == sample(g, spec(m, sr, 7)));
    }
    CHECK(sample(g, spec(m, 1.0, 3)) == g);
  }
}

TEST_CASE("walk samplers on disconnected graphs use the LCC") {
  const Graph g = make_graph({{0, 1}, {1, 2}, {2, 3}, {3, 0}, {10, 11}});
  for (SamplerMethod m : {SamplerMethod::kMetropolisHastingsWalk,
                          SamplerMethod::kCommonNeighborAwareWalk}) {
    const Graph sub = sample(g, spec(m, 1.0, 1));
    CHECK(sub.num_nodes() == 4);
    CHECK_FALSE(sub.index_of(10).has_value());
  }
}

TEST_CASE("sampler spec validation") {
  const Graph g = complete_graph(5);
  CHECK_THROWS_AS(sample(g, spec(SamplerMethod::kRandomNode, 0.0, 1)), Error);
  CHECK_THROWS_AS(sample(g, spec(SamplerMethod::kRandomNode, 1.5, 1)), Error);
  CHECK_THROWS_AS(parse_sampler_method("mcgs"), Error);
  CHECK(parse_sampler_method("cnarw") == SamplerMethod::kCommonNeighborAwareWalk);
}

TEST_CASE("MHRW accepts every move on a regular graph") {
  const Graph g = ring(9);
  const auto walk = mhrw_trajectory(g, 0, 2000, 5);
  for (std::size_t t = 1; t < walk.size(); ++t) CHECK(walk[t] != walk[t - 1]);
}

TEST_CASE("MHRW visit frequencies approach the uniform law") {
  // Degrees 1..4 mixed: a triangle with a tail and a pendant square.
  const Graph g = make_graph({{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 3}, {6, 7}});
  REQUIRE(g.num_nodes() == 8);
  const std::size_t steps = 4'000'000;
  const auto walk = mhrw_trajectory(g, 0, steps, 11);
  std::map<NodeIndex, std::size_t> visits;
  for (auto v : walk) ++visits[v];
  for (NodeIndex v = 0; v < 8; ++v) {
    const double freq = double(visits[v]) / double(walk.size());
    CHECK(std::abs(freq - 0.125) / 0.125 < 0.02);
  }
}

TEST_CASE("CNARW weights") {
  const Graph k4 = complete_graph(4);
  for (NodeIndex u = 0; u < 4; ++u) {
    const auto w = cnarw_weights(k4, u);
    REQUIRE(w.size() == 3);
    CHECK(w[0] == doctest::Approx(1.0 / 3.0));
    CHECK(w[1] == w[0]);
    CHECK(w[2] == w[0]);
  }
  for (double w : cnarw_weights(ring(10), 3)) CHECK(w == 1.0);
  // In a triangle every neighbor shares the third node: 1 - 1/2.
  for (double w : cnarw_weights(complete_graph(3), 0)) CHECK(w == doctest::Approx(0.5));
  const Graph k2 = complete_graph(2);
  CHECK(cnarw_weights(k2, 0)[0] == 1.0);
}
