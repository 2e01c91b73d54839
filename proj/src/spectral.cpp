#include "netshrink/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "netshrink/error.hpp"
#include "netshrink/metrics.hpp"
#include "netshrink/parallel.hpp"
#include "netshrink/seeding.hpp"

namespace netshrink {
namespace {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

void check_tau(double tau) {
  require(tau >= 0.0, ErrorKind::kDomain, "tau must be non-negative");
}

// Sum of exp(-tau l) and of l exp(-tau l) over the spectrum.
std::pair<double, double> weights(const LaplacianSpectrum& spectrum, double tau) {
  CompensatedSum z;
  CompensatedSum weighted;
  for (double lambda : spectrum.eigenvalues) {
    const double w = std::exp(-tau * lambda);
    z.add(w);
    weighted.add(lambda * w);
  }
  return {z.value(), weighted.value()};
}

double entropy_from(double z, double weighted, double tau) {
  if (z <= 0.0) return 0.0;
  return std::max(0.0, std::log(z) + tau * weighted / z);
}

}  // namespace

LaplacianSpectrum laplacian_eigenvalues(const Graph& g, std::size_t max_dense_n) {
  require(!g.empty(), ErrorKind::kDomain, "spectrum of an empty graph");
  require(g.num_nodes() <= max_dense_n, ErrorKind::kCapability,
          "graph has " + std::to_string(g.num_nodes()) +
              " nodes, above the dense eigensolver cap of " + std::to_string(max_dense_n) +
              "; use the stochastic estimator");
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n, n);
  for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
    laplacian(u, u) = static_cast<double>(g.degree(u));
    for (NodeIndex v : g.neighbors(u)) laplacian(u, v) = -1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorKind::kCapability,
          "symmetric eigensolver did not converge");

  LaplacianSpectrum spectrum;
  spectrum.n = g.num_nodes();
  spectrum.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end());
  for (auto& lambda : spectrum.eigenvalues) {
    if (lambda < 0.0 && lambda > -1e-8) lambda = 0.0;
  }
  return spectrum;
}

double partition_function(const LaplacianSpectrum& spectrum, double tau) {
  check_tau(tau);
  return weights(spectrum, tau).first;
}

double spectral_entropy(const LaplacianSpectrum& spectrum, double tau) {
  check_tau(tau);
  const auto [z, weighted] = weights(spectrum, tau);
  return entropy_from(z, weighted, tau);
}

double free_energy(const LaplacianSpectrum& spectrum, double tau) {
  require(tau > 0.0, ErrorKind::kDomain, "free energy is defined for tau > 0 only");
  return -std::log(partition_function(spectrum, tau)) / tau;
}

std::vector<double> default_tau_grid() { return log_grid(1e-2, 1e3, 60); }

SpectralSummary summarize_spectrum(const LaplacianSpectrum& spectrum,
                                   const std::vector<double>& tau_grid) {
  SpectralSummary s;
  s.n = spectrum.n;
  s.tau_grid = tau_grid;
  for (double tau : tau_grid) {
    check_tau(tau);
    const auto [z, weighted] = weights(spectrum, tau);
    s.z.push_back(z);
    s.z_norm.push_back(z / static_cast<double>(spectrum.n));
    s.entropy.push_back(entropy_from(z, weighted, tau));
    s.free_energy.push_back(tau > 0.0 ? -std::log(z) / tau
                                      : -std::numeric_limits<double>::infinity());
  }
  return s;
}

SpectralSummary spectral_summary(const Graph& g, const std::vector<double>& tau_grid,
                                 std::size_t max_dense_n) {
  return summarize_spectrum(laplacian_eigenvalues(g, max_dense_n), tau_grid);
}

SpectralEstimator parse_spectral_estimator(std::string_view name) {
  if (name == "dense") return SpectralEstimator::kDense;
  if (name == "stochastic") return SpectralEstimator::kStochastic;
  fail(ErrorKind::kConfig, "unknown spectral estimator '" + std::string(name) + "'");
}

StochasticTrace stochastic_partition_function(const Graph& g,
                                              const std::vector<double>& tau_grid,
                                              const StochasticTraceOptions& options) {
  require(!g.empty(), ErrorKind::kDomain, "spectrum of an empty graph");
  require(options.probes >= 1 && options.moments >= 4, ErrorKind::kConfig,
          "stochastic estimator needs probes >= 1 and moments >= 4");
  const std::size_t n = g.num_nodes();
  StochasticTrace out;
  out.tau_grid = tau_grid;

  double upper = 0.0;
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v : g.neighbors(u)) {
      upper = std::max(upper, static_cast<double>(g.degree(u) + g.degree(v)));
    }
  }
  if (upper == 0.0) {
    // Edgeless: L = 0.
    for (double tau : tau_grid) {
      check_tau(tau);
      out.z.push_back(static_cast<double>(n));
      out.weighted.push_back(0.0);
      out.converged.push_back(true);
    }
    return out;
  }

  // Moments mu_k = E[z^T T_k(S) z] with S = (2/upper) L - I mapping the
  // spectrum into [-1, 1]. v_{k+1} = 2 S v_k - v_{k-1}; the product
  // identities T_{2k} = 2 T_k^2 - T_0 and T_{2k+1} = 2 T_{k+1} T_k - T_1
  // give two moments per matvec.
  const std::size_t half = (options.moments + 1) / 2;
  const std::size_t moments = 2 * half;
  const double scale = 2.0 / upper;
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (NodeIndex u = 0; u < n; ++u) {
      double acc = static_cast<double>(g.degree(u)) * x[u];
      for (NodeIndex v : g.neighbors(u)) acc -= x[v];
      y[u] = scale * acc - x[u];
    }
  };

  // The null space of L is spanned by the component indicators and
  // contributes exactly one per component to Z. Probes are projected onto its
  // complement so only the remainder is estimated; otherwise the rank-one
  // limit at large tau carries an O(1) relative variance.
  const auto components = connected_components(g);
  auto deflate = [&components](std::vector<double>& x) {
    for (const auto& comp : components) {
      double mean = 0.0;
      for (NodeIndex u : comp) mean += x[u];
      mean /= static_cast<double>(comp.size());
      for (NodeIndex u : comp) x[u] -= mean;
    }
  };

  const std::size_t workers = worker_count();
  std::vector<std::vector<double>> partial(workers, std::vector<double>(moments, 0.0));
  parallel_for(options.probes, [&](std::size_t probe, std::size_t w) {
    Rng rng(substream_seed(options.seed, probe));
    std::bernoulli_distribution coin(0.5);
    std::vector<double> prev(n), cur(n), next(n);
    for (auto& x : prev) x = coin(rng) ? 1.0 : -1.0;
    deflate(prev);
    apply(prev, cur);
    auto dot = [n](const std::vector<double>& a, const std::vector<double>& b) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
      return s;
    };
    // prev = v_0, cur = v_1.
    const double mu0 = dot(prev, prev);
    const double mu1 = dot(prev, cur);
    auto& acc = partial[w];
    acc[0] += mu0;
    acc[1] += mu1;
    for (std::size_t k = 1; k < half; ++k) {
      // Here prev = v_{k-1}, cur = v_k.
      acc[2 * k] += 2.0 * dot(cur, cur) - mu0;
      apply(cur, next);
      for (std::size_t i = 0; i < n; ++i) next[i] = 2.0 * next[i] - prev[i];
      acc[2 * k + 1] += 2.0 * dot(next, cur) - mu1;
      std::swap(prev, cur);
      std::swap(cur, next);
    }
  });
  std::vector<double> mu(moments, 0.0);
  for (std::size_t k = 0; k < moments; ++k) {
    for (std::size_t w = 0; w < workers; ++w) mu[k] += partial[w][k];
    mu[k] /= static_cast<double>(options.probes);
  }

  // Chebyshev coefficients by interpolation at `moments` Chebyshev nodes.
  const std::size_t nodes = moments;
  std::vector<double> lambda_at(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    const double t = std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) /
                              static_cast<double>(nodes));
    lambda_at[j] = 0.5 * upper * (t + 1.0);
  }
  std::vector<double> basis(nodes * moments);
  for (std::size_t k = 0; k < moments; ++k) {
    for (std::size_t j = 0; j < nodes; ++j) {
      basis[k * nodes + j] = std::cos(std::numbers::pi * static_cast<double>(k) *
                                      (static_cast<double>(j) + 0.5) / static_cast<double>(nodes));
    }
  }
  std::vector<double> fz(nodes), fw(nodes);
  for (double tau : tau_grid) {
    check_tau(tau);
    for (std::size_t j = 0; j < nodes; ++j) {
      fz[j] = std::exp(-tau * lambda_at[j]);
      fw[j] = lambda_at[j] * fz[j];
    }
    double z = 0.0;
    double weighted = 0.0;
    double tail = 0.0;
    double head = 0.0;
    for (std::size_t k = 0; k < moments; ++k) {
      double cz = 0.0;
      double cw = 0.0;
      const double* row = &basis[k * nodes];
      for (std::size_t j = 0; j < nodes; ++j) {
        cz += fz[j] * row[j];
        cw += fw[j] * row[j];
      }
      const double factor = (k == 0 ? 1.0 : 2.0) / static_cast<double>(nodes);
      cz *= factor;
      cw *= factor;
      z += cz * mu[k];
      weighted += cw * mu[k];
      head = std::max(head, std::abs(cz));
      if (k + 8 >= moments) tail = std::max(tail, std::abs(cz));
    }
    out.z.push_back(z + static_cast<double>(components.size()));
    out.weighted.push_back(weighted);
    out.converged.push_back(tail <= 1e-10 * head);
  }
  return out;
}

SpectralSummary stochastic_spectral_summary(const Graph& g, const std::vector<double>& tau_grid,
                                            const StochasticTraceOptions& options) {
  const auto trace = stochastic_partition_function(g, tau_grid, options);
  SpectralSummary s;
  s.n = g.num_nodes();
  s.tau_grid = tau_grid;
  for (std::size_t k = 0; k < tau_grid.size(); ++k) {
    const double tau = tau_grid[k];
    const double z = trace.z[k];
    s.z.push_back(z);
    s.z_norm.push_back(z / static_cast<double>(s.n));
    s.entropy.push_back(entropy_from(z, trace.weighted[k], tau));
    s.free_energy.push_back(tau > 0.0 && z > 0.0 ? -std::log(z) / tau
                                                 : std::numeric_limits<double>::quiet_NaN());
  }
  return s;
}

}  // namespace netshrink
