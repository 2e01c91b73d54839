#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netshrink/epidemic.hpp"
#include "netshrink/generators.hpp"
#include "netshrink/graph.hpp"
#include "netshrink/metrics.hpp"
#include "netshrink/reduction.hpp"
#include "netshrink/spectral.hpp"

namespace netshrink {

constexpr int kConfigSchemaVersion = 1;

enum class Method { kNrdc, kNrdcPrime, kRdn, kMhrw, kCnarw };

Method parse_method(std::string_view name);
const char* to_string(Method method);

struct NetworkSource {
  std::optional<GeneratorSpec> generator;
  std::filesystem::path edge_list;
  bool use_lcc = false;  // analyse the input's LCC instead of the raw graph
  std::string name;      // label used in reports; derived when empty
};

struct ExperimentConfig {
  std::string name;
  NetworkSource network;
  Method method = Method::kNrdc;
  ReductionParams reduction;  // q is derived per level
  std::vector<unsigned> levels{0};
  SirParams sir;              // beta, seed and time_grid are set per stage
  std::vector<double> curve_betas{1.0};
  std::size_t time_points = 101;
  std::vector<double> beta_grid = uniform_grid(0.0, 2.0, 21);
  std::vector<double> tau_grid = default_tau_grid();
  bool spectral_enabled = true;
  SpectralEstimator estimator = SpectralEstimator::kDense;
  std::size_t max_dense_n = kDefaultDenseCap;
  StochasticTraceOptions stochastic;
  std::size_t fine_grid_points = kDefaultFineGridPoints;
  std::filesystem::path output_dir;
  std::uint64_t master_seed = 0;
};

// JSON config with a "schema_version" field. Throws config errors.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& config);
void validate(const ExperimentConfig& config);

std::string network_name(const ExperimentConfig& config);

struct StageError {
  std::string stage;
  unsigned level = 0;
  std::string kind;
  std::string message;
};

struct LevelResult {
  unsigned level = 0;
  std::optional<NetworkSummary> summary;
  std::uint64_t reduce_seed = 0;
  std::uint64_t sir_seed = 0;
  std::uint64_t profile_seed = 0;
  std::optional<SpreadingProfile> profile;
  std::vector<SirCurve> curves;  // one per curve beta
  std::optional<SpectralSummary> spectral;
  std::optional<OverlapReport> overlap;   // profile vs level 0
  std::vector<CurveMae> mae;              // per curve beta, vs level 0
  std::optional<double> z_norm_mae;       // spectral vs level 0
  std::map<std::string, double> seconds;  // wall clock per stage
};

struct ExperimentResult {
  std::string network;
  Method method = Method::kNrdc;
  std::vector<LevelResult> levels;  // ascending; always includes level 0
  std::vector<StageError> errors;
  std::filesystem::path output_dir;
};

// Reduces (or samples at sr = 1/2^l) for every level, then computes summaries,
// SIR curves, spreading profiles and spectral summaries and compares each
// level to level 0. When output_dir is set, writes:
//   level_<l>/graph.edges, summary.csv, sir_beta_<b>.csv, profile.csv,
//   spectral.csv; overlap.csv; mae.csv; result.json; timings.json.
// Stage failures are recorded in `errors` without aborting other stages.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Graph for one level of `config` (level 0 is the input itself).
Graph level_graph(const Graph& input, const ExperimentConfig& config, unsigned level);

// Input network of `config`: generated or read, LCC applied if requested.
Graph load_network(const ExperimentConfig& config);

struct ManifestRow {
  std::string name;
  std::optional<NetworkSummary> summary;
  std::string error;
};

// One row per regular file in `dir`, sorted by file name.
std::vector<ManifestRow> dataset_manifest(const std::filesystem::path& dir);
void write_manifest_csv(std::ostream& out, const std::vector<ManifestRow>& rows);

struct OverlapMatrixRow {
  std::string network;
  unsigned level = 0;
  std::size_t k_min = 0;
  std::uint64_t seed = 0;
  std::map<Method, double> f_overlap;
};

// f_overlap matrix by (network, level) and method. All configs must share the
// beta grid and SIR parameters.
std::vector<OverlapMatrixRow> overlap_matrix_report(const std::vector<ExperimentConfig>& configs);
std::vector<OverlapMatrixRow> overlap_matrix_from_results(const std::vector<ExperimentConfig>& configs,
                                           const std::vector<ExperimentResult>& results);
void write_overlap_matrix_csv(std::ostream& out, const std::vector<OverlapMatrixRow>& rows);

}  // namespace netshrink
