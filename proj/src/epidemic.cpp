#include "netshrink/epidemic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <queue>
#include <random>
#include <string>

#include "netshrink/error.hpp"
#include "netshrink/metrics.hpp"
#include "netshrink/parallel.hpp"
#include "netshrink/seeding.hpp"

namespace netshrink {
namespace {

constexpr double kNever = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kPilotStream = 0x70696c6f74ULL;  // "pilot"

enum class State : std::uint8_t { kSusceptible, kInfected, kRecovered };

struct Pending {
  double time;
  SirEventKind kind;
  NodeIndex node;

  // Min-heap on (time, kind, node) for a total, deterministic order.
  bool operator>(const Pending& o) const {
    if (time != o.time) return time > o.time;
    if (kind != o.kind) return kind > o.kind;
    return node > o.node;
  }
};

// Event-driven SIR with pre-sampled transmission times. When node u is
// infected at t it draws its recovery time t + Exp(gamma) and, for every
// susceptible neighbor, a transmission time t + Exp(beta); a transmission
// is scheduled only if it precedes u's recovery and improves on the
// neighbor's earliest pending infection. This realizes the Markov process
// exactly: each edge clock is independent and only its first firing matters.
class SirEngine {
 public:
  SirEngine(const Graph& g, const SirParams& params)
      : g_(g),
        params_(params),
        seeds_(initial_infected(g, params.init_top_degree_frac)),
        state_(g.num_nodes()),
        scheduled_(g.num_nodes()) {}

  const std::vector<NodeIndex>& seeds() const { return seeds_; }

  // Runs one realization. Events are appended to `events` when non-null.
  // Returns the number of nodes ever infected.
  std::size_t run(std::uint64_t seed, std::vector<SirEvent>* events) {
    rng_.seed(seed);
    std::fill(state_.begin(), state_.end(), State::kSusceptible);
    std::fill(scheduled_.begin(), scheduled_.end(), kNever);
    heap_ = {};
    std::size_t ever_infected = 0;
    for (NodeIndex s : seeds_) {
      state_[s] = State::kInfected;
      ++ever_infected;
    }
    for (NodeIndex s : seeds_) infect(s, 0.0);

    while (!heap_.empty()) {
      const Pending next = heap_.top();
      heap_.pop();
      if (next.kind == SirEventKind::kRecovery) {
        state_[next.node] = State::kRecovered;
        if (events) events->push_back({next.time, next.kind, next.node});
      } else if (state_[next.node] == State::kSusceptible) {
        state_[next.node] = State::kInfected;
        ++ever_infected;
        if (events) events->push_back({next.time, next.kind, next.node});
        infect(next.node, next.time);
      }
    }
    return ever_infected;
  }

 private:
  double exponential(double rate) {
    return std::exponential_distribution<double>(rate)(rng_);
  }

  void infect(NodeIndex u, double t) {
    const double recovery = t + exponential(params_.gamma);
    heap_.push({recovery, SirEventKind::kRecovery, u});
    if (params_.beta <= 0.0) return;
    for (NodeIndex v : g_.neighbors(u)) {
      if (state_[v] != State::kSusceptible) continue;
      const double when = t + exponential(params_.beta);
      if (when < recovery && when < scheduled_[v]) {
        scheduled_[v] = when;
        heap_.push({when, SirEventKind::kInfection, v});
      }
    }
  }

  const Graph& g_;
  const SirParams& params_;
  std::vector<NodeIndex> seeds_;
  std::vector<State> state_;
  std::vector<double> scheduled_;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> heap_;
  Rng rng_;
};

void check_time_grid(const std::vector<double>& grid) {
  require(!grid.empty() && grid.front() == 0.0, ErrorKind::kConfig,
          "SIR time grid must start at t = 0");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    require(grid[k] > grid[k - 1], ErrorKind::kConfig, "SIR time grid must strictly increase");
  }
}

}  // namespace

void validate(const SirParams& params) {
  require(params.beta >= 0.0, ErrorKind::kConfig, "beta must be non-negative");
  require(params.gamma > 0.0, ErrorKind::kConfig, "gamma must be positive");
  require(params.init_top_degree_frac > 0.0 && params.init_top_degree_frac < 1.0,
          ErrorKind::kConfig, "initial infected fraction must lie in (0, 1)");
  require(params.runs >= 1, ErrorKind::kConfig, "at least one run is required");
}

std::vector<NodeIndex> initial_infected(const Graph& g, double frac) {
  require(!g.empty(), ErrorKind::kDomain, "SIR on an empty graph");
  const auto count = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(frac * static_cast<double>(g.num_nodes()) - 1e-9)), 1,
      g.num_nodes());
  std::vector<NodeIndex> order(g.num_nodes());
  std::iota(order.begin(), order.end(), NodeIndex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&g](NodeIndex a, NodeIndex b) { return g.degree(a) > g.degree(b); });
  order.resize(count);
  return order;
}

SirRun simulate_sir(const Graph& g, const SirParams& params, std::size_t run_index) {
  validate(params);
  SirEngine engine(g, params);
  SirRun run;
  run.initial_infected = engine.seeds();
  engine.run(substream_seed(params.seed, run_index), &run.events);
  return run;
}

SirCurve ensemble_curve(const Graph& g, const SirParams& params) {
  validate(params);
  check_time_grid(params.time_grid);
  const auto& grid = params.time_grid;
  const std::size_t points = grid.size();
  const std::size_t workers = worker_count();

  // Integer count sums make the average independent of run scheduling.
  std::vector<std::vector<std::int64_t>> infected(workers, std::vector<std::int64_t>(points, 0));
  std::vector<std::vector<std::int64_t>> recovered(workers, std::vector<std::int64_t>(points, 0));
  std::vector<std::unique_ptr<SirEngine>> engines(workers);
  std::vector<std::vector<SirEvent>> scratch(workers);

  parallel_for(params.runs, [&](std::size_t run, std::size_t w) {
    if (!engines[w]) engines[w] = std::make_unique<SirEngine>(g, params);
    auto& events = scratch[w];
    events.clear();
    engines[w]->run(substream_seed(params.seed, run), &events);
    std::int64_t i_count = static_cast<std::int64_t>(engines[w]->seeds().size());
    std::int64_t r_count = 0;
    std::size_t e = 0;
    for (std::size_t k = 0; k < points; ++k) {
      while (e < events.size() && events[e].time <= grid[k]) {
        if (events[e].kind == SirEventKind::kInfection) {
          ++i_count;
        } else {
          --i_count;
          ++r_count;
        }
        ++e;
      }
      infected[w][k] += i_count;
      recovered[w][k] += r_count;
    }
  });

  SirCurve curve;
  curve.time_grid = grid;
  curve.s_mean.resize(points);
  curve.i_mean.resize(points);
  curve.r_mean.resize(points);
  const auto total = static_cast<std::int64_t>(params.runs * g.num_nodes());
  const double denom = static_cast<double>(total);
  for (std::size_t k = 0; k < points; ++k) {
    std::int64_t i_sum = 0;
    std::int64_t r_sum = 0;
    for (std::size_t w = 0; w < workers; ++w) {
      i_sum += infected[w][k];
      r_sum += recovered[w][k];
    }
    curve.i_mean[k] = static_cast<double>(i_sum) / denom;
    curve.r_mean[k] = static_cast<double>(r_sum) / denom;
    curve.s_mean[k] = static_cast<double>(total - i_sum - r_sum) / denom;
  }
  return curve;
}

std::vector<double> default_time_grid(const Graph& g, const SirParams& params,
                                      std::size_t points) {
  validate(params);
  require(points >= 2, ErrorKind::kConfig, "time grid needs at least two points");
  constexpr std::size_t kPilotRuns = 10;
  SirEngine engine(g, params);
  std::vector<double> end_times;
  std::vector<SirEvent> events;
  const std::uint64_t pilot_seed = substream_seed(params.seed, kPilotStream);
  for (std::size_t run = 0; run < kPilotRuns; ++run) {
    events.clear();
    engine.run(substream_seed(pilot_seed, run), &events);
    end_times.push_back(events.empty() ? 0.0 : events.back().time);
  }
  std::sort(end_times.begin(), end_times.end());
  // Nearest-rank percentile.
  const auto rank = static_cast<std::size_t>(std::ceil(0.99 * kPilotRuns));
  double horizon = end_times[std::clamp<std::size_t>(rank, 1, kPilotRuns) - 1];
  if (!(horizon > 0.0)) horizon = 1.0;
  return uniform_grid(0.0, horizon, points);
}

SirCurve resample(const SirCurve& curve, const std::vector<double>& time_grid) {
  check_time_grid(time_grid);
  const auto& xs = curve.time_grid;
  auto project = [&](const std::vector<double>& ys) {
    std::vector<double> out;
    out.reserve(time_grid.size());
    for (double t : time_grid) {
      if (xs.size() == 1 || t <= xs.front()) {
        out.push_back(ys.front());
      } else if (t >= xs.back()) {
        out.push_back(ys.back());
      } else {
        const double v = t;
        out.push_back(linear_interpolate(xs, ys, std::span<const double>(&v, 1)).front());
      }
    }
    return out;
  };
  SirCurve out;
  out.time_grid = time_grid;
  out.i_mean = project(curve.i_mean);
  out.r_mean = project(curve.r_mean);
  out.s_mean.resize(time_grid.size());
  for (std::size_t k = 0; k < time_grid.size(); ++k) {
    out.s_mean[k] = 1.0 - out.i_mean[k] - out.r_mean[k];
  }
  return out;
}

std::vector<double> final_recovered_fractions(const Graph& g, const SirParams& params) {
  validate(params);
  const std::size_t workers = worker_count();
  std::vector<std::unique_ptr<SirEngine>> engines(workers);
  std::vector<double> fractions(params.runs);
  const double n = static_cast<double>(g.num_nodes());
  parallel_for(params.runs, [&](std::size_t run, std::size_t w) {
    if (!engines[w]) engines[w] = std::make_unique<SirEngine>(g, params);
    fractions[run] =
        static_cast<double>(engines[w]->run(substream_seed(params.seed, run), nullptr)) / n;
  });
  return fractions;
}

SpreadingProfile spreading_profile(const Graph& g, const std::vector<double>& beta_grid,
                                   const SirParams& params) {
  validate(params);
  require(beta_grid.size() >= 2, ErrorKind::kConfig, "beta grid needs at least two points");
  SpreadingProfile profile;
  profile.beta_grid = beta_grid;
  profile.rho_r.reserve(beta_grid.size());
  for (double beta : beta_grid) {
    require(beta >= 0.0 && beta <= 2.0, ErrorKind::kConfig, "beta grid must lie in [0, 2]");
    SirParams at = params;
    at.beta = beta;
    const auto fractions = final_recovered_fractions(g, at);
    // Sum in run order so the mean does not depend on scheduling.
    profile.rho_r.push_back(std::accumulate(fractions.begin(), fractions.end(), 0.0) /
                            static_cast<double>(fractions.size()));
  }
  return profile;
}

CurveMae curve_mae(const SirCurve& a, const SirCurve& b) {
  require(a.time_grid == b.time_grid, ErrorKind::kUsage,
          "curve MAE needs identical time grids; resample first");
  return {mean_absolute_error(a.r_mean, b.r_mean), mean_absolute_error(a.i_mean, b.i_mean)};
}

}  // namespace netshrink
