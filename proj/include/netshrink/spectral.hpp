#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "netshrink/graph.hpp"

namespace netshrink {

// Largest graph handed to the dense eigensolver by default.
constexpr std::size_t kDefaultDenseCap = 6000;

// Eigenvalues of L = D - A in ascending order. Tiny negative round-off values
// (above -1e-8) are clamped to zero.
struct LaplacianSpectrum {
  std::vector<double> eigenvalues;
  std::size_t n = 0;
};

// Full symmetric eigendecomposition. Graphs above `max_dense_n` nodes raise a
// capability error; use the stochastic estimator for those.
LaplacianSpectrum laplacian_eigenvalues(const Graph& g,
                                        std::size_t max_dense_n = kDefaultDenseCap);

// Z_tau = Tr exp(-tau L) = sum_i exp(-tau lambda_i). tau >= 0.
double partition_function(const LaplacianSpectrum& spectrum, double tau);

// Von Neumann entropy of rho = exp(-tau L) / Z_tau, natural log. tau >= 0.
double spectral_entropy(const LaplacianSpectrum& spectrum, double tau);

// F_tau = -ln(Z_tau) / tau. tau > 0.
double free_energy(const LaplacianSpectrum& spectrum, double tau);

struct SpectralSummary {
  std::size_t n = 0;
  std::vector<double> tau_grid;
  std::vector<double> z;
  std::vector<double> z_norm;  // Z_tau / N
  std::vector<double> entropy;
  std::vector<double> free_energy;
};

// 60 log-spaced points on [1e-2, 1e3].
std::vector<double> default_tau_grid();

SpectralSummary summarize_spectrum(const LaplacianSpectrum& spectrum,
                                   const std::vector<double>& tau_grid);

SpectralSummary spectral_summary(const Graph& g, const std::vector<double>& tau_grid,
                                 std::size_t max_dense_n = kDefaultDenseCap);

enum class SpectralEstimator { kDense, kStochastic };

SpectralEstimator parse_spectral_estimator(std::string_view name);

struct StochasticTraceOptions {
  std::size_t probes = 64;     // Rademacher probe vectors
  std::size_t moments = 1024;  // Chebyshev moments (about half as many matvecs)
  std::uint64_t seed = 0;
};

// Hutchinson estimates of Tr exp(-tau L) and Tr(L exp(-tau L)) from a
// Chebyshev expansion on [0, lambda_upper], lambda_upper being the
// max over edges of deg u + deg v. All taus share one set of moments. The
// null space (one constant vector per component) is counted exactly and
// projected out of the probes.
struct StochasticTrace {
  std::vector<double> tau_grid;
  std::vector<double> z;
  std::vector<double> weighted;  // Tr(L exp(-tau L))
  // False where the expansion had not converged at the requested degree
  // (large tau * lambda_upper); such values are unreliable.
  std::vector<bool> converged;
};

StochasticTrace stochastic_partition_function(const Graph& g,
                                              const std::vector<double>& tau_grid,
                                              const StochasticTraceOptions& options = {});

// Same observables as spectral_summary, from the stochastic estimates.
SpectralSummary stochastic_spectral_summary(const Graph& g, const std::vector<double>& tau_grid,
                                            const StochasticTraceOptions& options = {});

}  // namespace netshrink
