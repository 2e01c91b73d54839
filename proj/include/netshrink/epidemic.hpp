#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "netshrink/graph.hpp"

namespace netshrink {

struct SirParams {
  double beta = 1.0;                   // per-edge infection rate
  double gamma = 1.0;                  // per-node recovery rate
  double init_top_degree_frac = 0.10;  // seeds: top ceil(frac N) nodes by degree
  std::size_t runs = 100;
  std::uint64_t seed = 0;
  std::vector<double> time_grid;       // strictly increasing, starting at 0
};

void validate(const SirParams& params);

enum class SirEventKind : std::uint8_t { kInfection, kRecovery };

struct SirEvent {
  double time = 0.0;
  SirEventKind kind = SirEventKind::kInfection;
  NodeIndex node = 0;

  friend bool operator==(const SirEvent&, const SirEvent&) = default;
};

// One stochastic realization. Seeds are infected at t = 0 and are listed in
// `initial_infected` rather than as events.
struct SirRun {
  std::vector<NodeIndex> initial_infected;
  std::vector<SirEvent> events;  // time ordered
};

// Top ceil(frac N) nodes by degree, ties broken by ascending label.
std::vector<NodeIndex> initial_infected(const Graph& g, double frac);

// Continuous-time Markovian SIR: every infected-susceptible edge transmits at
// rate beta and every infected node recovers at rate gamma. Runs until no
// infected node remains. (seed, run_index) fully determines the result.
SirRun simulate_sir(const Graph& g, const SirParams& params, std::size_t run_index);

// Ensemble-averaged compartment fractions on a time grid.
struct SirCurve {
  std::vector<double> time_grid;
  std::vector<double> s_mean;
  std::vector<double> i_mean;
  std::vector<double> r_mean;
};

// Samples each run's step functions on params.time_grid (right-continuous;
// the final state holds forever) and averages pointwise over params.runs.
SirCurve ensemble_curve(const Graph& g, const SirParams& params);

// `points` uniform times on [0, T], T being the 99th percentile of run end
// times over a 10-run pilot.
std::vector<double> default_time_grid(const Graph& g, const SirParams& params,
                                      std::size_t points = 101);

// Piecewise-linear resampling, holding end values outside the original grid.
SirCurve resample(const SirCurve& curve, const std::vector<double>& time_grid);

struct SpreadingProfile {
  std::vector<double> beta_grid;
  std::vector<double> rho_r;  // mean final recovered fraction per beta
};

SpreadingProfile spreading_profile(const Graph& g, const std::vector<double>& beta_grid,
                                   const SirParams& params);

// Final recovered fraction of every run at the given params.
std::vector<double> final_recovered_fractions(const Graph& g, const SirParams& params);

struct CurveMae {
  double r = 0.0;
  double i = 0.0;
};

// Mean absolute differences of the r and i curves; the grids must be equal.
CurveMae curve_mae(const SirCurve& a, const SirCurve& b);

}  // namespace netshrink
