#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netshrink/error.hpp"
#include "netshrink/generators.hpp"
#include "netshrink/metrics.hpp"
#include "netshrink/spectral.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace netshrink;
using namespace netshrink::testing;


TEST_CASE("analytic spectra") {
  const auto k2 = laplacian_eigenvalues(complete_graph(2)).eigenvalues;
  REQUIRE(k2.size() == 2);
  CHECK(k2[0] == doctest::Approx(0.0));
  CHECK(k2[1] == doctest::Approx(2.0));
  const auto p3 = laplacian_eigenvalues(path(3)).eigenvalues;
  CHECK(p3[0] == doctest::Approx(0.0));
  CHECK(p3[1] == doctest::Approx(1.0));
  CHECK(p3[2] == doctest::Approx(3.0));
}

TEST_CASE("spectrum invariants") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_graph(40, 0.08, seed);
    const auto spec = laplacian_eigenvalues(g);
    const auto& ev = spec.eigenvalues;
    CHECK(std::is_sorted(ev.begin(), ev.end()));
    CHECK(std::abs(ev.front()) <= 1e-8);
    for (double x : ev) CHECK(x >= -1e-8);
    const double sum = std::accumulate(ev.begin(), ev.end(), 0.0);
    CHECK(std::abs(sum - 2.0 * g.num_edges()) <= 1e-6 * std::max(1.0, sum));
    const auto zeros = std::count_if(ev.begin(), ev.end(), [](double x) { return x < 1e-8; });
    CHECK(std::size_t(zeros) == connected_components(g).size());
  }
}

TEST_CASE("partition function") {
  const auto k2 = laplacian_eigenvalues(complete_graph(2));
  CHECK(partition_function(k2, 0.0) == 2.0);
  CHECK(partition_function(k2, 1.0) == doctest::Approx(1.1353352832366128).epsilon(1e-14));
  const Graph two_parts = make_graph({{0, 1}, {1, 2}, {5, 6}});
  CHECK(std::abs(partition_function(laplacian_eigenvalues(two_parts), 1e6) - 2.0) <= 1e-9);
  CHECK_THROWS_AS(partition_function(k2, -0.5), Error);
}

TEST_CASE("partition function matches a matrix-exponential trace") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(5 + seed % 16, 0.3, seed);
    const auto spec = laplacian_eigenvalues(g);
    for (double tau : {0.1, 1.0, 10.0}) {
      CHECK(partition_function(spec, tau) == doctest::Approx(taylor_trace(g, tau)).epsilon(1e-8));
    }
  }
}

TEST_CASE("spectral entropy") {
  const auto k2 = laplacian_eigenvalues(complete_graph(2));
  CHECK(spectral_entropy(k2, 0.0) == doctest::Approx(std::log(2.0)));
  // p = {1, e^-2} / (1 + e^-2).
  CHECK(spectral_entropy(k2, 1.0) == doctest::Approx(0.3653338550872077).epsilon(1e-12));
  const auto single = laplacian_eigenvalues(isolated(1));
  for (double tau : {0.0, 1.0, 100.0}) CHECK(spectral_entropy(single, tau) == 0.0);
  CHECK_THROWS_AS(spectral_entropy(k2, -1.0), Error);
}

TEST_CASE("free energy") {
  const auto k2 = laplacian_eigenvalues(complete_graph(2));
  CHECK(free_energy(k2, 1.0) == doctest::Approx(-0.1269280110429726).epsilon(1e-12));
  CHECK_THROWS_AS(free_energy(k2, 0.0), Error);
  const Graph g = random_connected(12, 10, 3);
  const double far = free_energy(laplacian_eigenvalues(g), 1e4);
  CHECK(far <= 1e-12);
  CHECK(far > -1e-6);

  // Two disjoint copies double Z.
  std::vector<Edge> doubled = g.edges();
  for (const auto& [u, v] : g.edges()) doubled.emplace_back(u + 100, v + 100);
  const auto one = laplacian_eigenvalues(g);
  const auto two = laplacian_eigenvalues(Graph::from_edges(doubled));
  for (double tau : {0.1, 1.0, 10.0}) {
    CHECK(free_energy(two, tau) == doctest::Approx(free_energy(one, tau) - std::log(2.0) / tau));
  }
}

TEST_CASE("spectral summary invariants") {
  const Graph g = generate({GeneratorModel::kBarabasiAlbert, 300, 0.0, 3, 2});
  const auto grid = default_tau_grid();
  REQUIRE(grid.size() == 60);
  CHECK(grid.front() == doctest::Approx(1e-2));
  CHECK(grid.back() == doctest::Approx(1e3));
  const SpectralSummary s = spectral_summary(g, grid);
  CHECK(s.z_norm.front() == doctest::Approx(1.0).epsilon(0.1));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(s.z_norm[k] > 0.0);
    CHECK(s.z_norm[k] <= 1.0);
    CHECK(s.entropy[k] >= -1e-12);
    CHECK(s.entropy[k] <= std::log(300.0) + 1e-12);
    CHECK(s.free_energy[k] == doctest::Approx(-std::log(s.z[k]) / grid[k]));
    if (k > 0) CHECK(s.z[k] < s.z[k - 1]);
  }
}

TEST_CASE("dense solver cap") {
  try {
    laplacian_eigenvalues(ring(50), 40);
    FAIL("expected a capability error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kCapability);
  }
}

TEST_CASE("stochastic estimator tracks the dense route") {
  const Graph g = generate({GeneratorModel::kBarabasiAlbert, 600, 0.0, 4, 3});
  const auto grid = log_grid(1e-2, 10.0, 15);
  const auto dense = laplacian_eigenvalues(g);
  StochasticTraceOptions options;
  options.seed = 4;
  const StochasticTrace est = stochastic_partition_function(g, grid, options);
  std::size_t compared = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!est.converged[k]) continue;
    ++compared;
    const double exact = partition_function(dense, grid[k]);
    CHECK(std::abs(est.z[k] - exact) / exact < 0.02);
  }
  CHECK(compared >= 10);
  const SpectralSummary s = stochastic_spectral_summary(g, grid, options);
  CHECK(s.z == est.z);
}

TEST_CASE("stochastic estimator on an edgeless graph") {
  const StochasticTrace est = stochastic_partition_function(isolated(7), {0.5, 5.0});
  CHECK(est.z[0] == doctest::Approx(7.0));
  CHECK(est.z[1] == doctest::Approx(7.0));
}
