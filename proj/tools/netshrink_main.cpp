// Command-line front end for the netshrink library.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netshrink/csv.hpp"
#include "netshrink/edge_list.hpp"
#include "netshrink/epidemic.hpp"
#include "netshrink/error.hpp"
#include "netshrink/experiment.hpp"
#include "netshrink/generators.hpp"
#include "netshrink/metrics.hpp"
#include "netshrink/reduction.hpp"
#include "netshrink/samplers.hpp"
#include "netshrink/spectral.hpp"

namespace ns = netshrink;
using nlohmann::json;

namespace {

void write_json(const std::string& path, const json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  ns::require(out.good(), ns::ErrorKind::kData, "cannot write " + path);
  out << j.dump(2) << '\n';
}

void write_table(const std::string& path, const ns::NumericTable& table) {
  if (path.empty() || path == "-") {
    ns::write_csv(std::cout, table);
  } else {
    ns::write_csv(path, table);
  }
}

void write_graph(const std::string& path, const ns::Graph& g) {
  if (path.empty() || path == "-") {
    ns::write_edge_list(std::cout, g);
  } else {
    ns::write_edge_list(path, g);
  }
}

json edges_json(const std::vector<ns::Edge>& edges) {
  json out = json::array();
  for (const auto& [u, v] : edges) out.push_back({u, v});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network reduction and spreading-dynamics toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate an ER or BA network");
  std::string gen_model, gen_out;
  ns::GeneratorSpec gen_spec;
  std::optional<double> gen_avg;
  std::optional<std::size_t> gen_m;
  gen->add_option("--model", gen_model, "er or ba")->required();
  gen->add_option("--n", gen_spec.n, "Number of nodes")->required();
  auto* avg_opt = gen->add_option("--avg-degree", gen_avg, "Target average degree");
  gen->add_option("--m", gen_m, "Edges per new node (BA)")->excludes(avg_opt);
  gen->add_option("--seed", gen_spec.seed, "Random seed");
  gen->add_option("--out", gen_out, "Output edge list (default stdout)");

  // reduce
  auto* red = app.add_subcommand("reduce", "Reduce a network by degree-based node removal");
  std::string red_in, red_method = "nrdc", red_out, red_trace;
  std::optional<double> red_q;
  std::optional<unsigned> red_level;
  ns::ReductionParams red_params;
  red->add_option("--in", red_in, "Input edge list")->required();
  red->add_option("--method", red_method, "nrdc or nrdc-prime");
  auto* q_opt = red->add_option("--q", red_q, "Removal ratio in [0, 1)");
  red->add_option("--level", red_level, "Level l, q = 1 - 1/2^l")->excludes(q_opt);
  red->add_option("--k-min", red_params.k_min, "Minimum degree guard for edge pruning");
  red->add_option("--tolerance", red_params.degree_tolerance, "Average-degree tolerance");
  red->add_flag("--lcc-fallback", red_params.lcc_fallback, "Keep only the LCC when disconnected");
  red->add_option("--out", red_out, "Output edge list (default stdout)");
  red->add_option("--trace", red_trace, "Write a JSON trace");

  // sample
  auto* smp = app.add_subcommand("sample", "Sample a network with a baseline sampler");
  std::string smp_in, smp_method, smp_out;
  ns::SamplerSpec smp_spec;
  smp->add_option("--in", smp_in, "Input edge list")->required();
  smp->add_option("--method", smp_method, "rdn, mhrw or cnarw")->required();
  smp->add_option("--sr", smp_spec.sr, "Sampling rate in (0, 1]")->required();
  smp->add_option("--seed", smp_spec.seed, "Random seed");
  smp->add_option("--burn-in", smp_spec.burn_in, "Walk steps discarded before collecting");
  smp->add_option("--out", smp_out, "Output edge list (default stdout)");

  // sir
  auto* sir = app.add_subcommand("sir", "Ensemble-averaged SIR curves");
  std::string sir_in, sir_out;
  ns::SirParams sir_params;
  std::size_t sir_grid = 101;
  sir->add_option("--in", sir_in, "Input edge list")->required();
  sir->add_option("--beta", sir_params.beta, "Transmission rate");
  sir->add_option("--gamma", sir_params.gamma, "Recovery rate");
  sir->add_option("--init-frac", sir_params.init_top_degree_frac, "Seeded fraction (top degree)");
  sir->add_option("--runs", sir_params.runs, "Number of runs");
  sir->add_option("--seed", sir_params.seed, "Random seed");
  sir->add_option("--grid", sir_grid, "Number of time-grid points");
  sir->add_option("--out", sir_out, "Output CSV t,s,i,r (default stdout)");

  // profile
  auto* prof = app.add_subcommand("profile", "Final recovered fraction across beta");
  std::string prof_in, prof_out;
  ns::SirParams prof_params;
  double beta_min = 0.0, beta_max = 2.0;
  std::size_t beta_steps = 21;
  prof->add_option("--in", prof_in, "Input edge list")->required();
  prof->add_option("--beta-min", beta_min, "Smallest beta");
  prof->add_option("--beta-max", beta_max, "Largest beta");
  prof->add_option("--beta-steps", beta_steps, "Number of beta points");
  prof->add_option("--gamma", prof_params.gamma, "Recovery rate");
  prof->add_option("--init-frac", prof_params.init_top_degree_frac, "Seeded fraction");
  prof->add_option("--runs", prof_params.runs, "Runs per beta");
  prof->add_option("--seed", prof_params.seed, "Random seed");
  prof->add_option("--out", prof_out, "Output CSV beta,rho_r (default stdout)");

  // spectral
  auto* spec = app.add_subcommand("spectral", "Laplacian partition function, entropy, free energy");
  std::string spec_in, spec_out, spec_estimator = "dense";
  double tau_min = 1e-2, tau_max = 1e3;
  std::size_t tau_steps = 60, max_dense = ns::kDefaultDenseCap;
  ns::StochasticTraceOptions stoch;
  spec->add_option("--in", spec_in, "Input edge list")->required();
  spec->add_option("--tau-min", tau_min, "Smallest tau (log grid)");
  spec->add_option("--tau-max", tau_max, "Largest tau");
  spec->add_option("--tau-steps", tau_steps, "Number of tau points");
  spec->add_option("--estimator", spec_estimator, "dense or stochastic");
  spec->add_option("--max-dense-n", max_dense, "Node cap for the dense solver");
  spec->add_option("--probes", stoch.probes, "Stochastic probes");
  spec->add_option("--moments", stoch.moments, "Chebyshev moments");
  spec->add_option("--seed", stoch.seed, "Stochastic probe seed");
  spec->add_option("--out", spec_out, "Output CSV (default stdout)");

  // overlap
  auto* ovl = app.add_subcommand("overlap", "Overlap score between two spreading profiles");
  std::string ovl_base, ovl_other, ovl_out, ovl_interp = "linear";
  std::size_t ovl_fine = ns::kDefaultFineGridPoints;
  ovl->add_option("--base", ovl_base, "Reference profile CSV (beta,rho_r)")->required();
  ovl->add_option("--other", ovl_other, "Compared profile CSV")->required();
  ovl->add_option("--fine", ovl_fine, "Fine grid points");
  ovl->add_option("--interp", ovl_interp, "linear or cubic");
  ovl->add_option("--out", ovl_out, "Output JSON (default stdout)");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run a configured multi-level experiment");
  std::string exp_config, exp_out_dir;
  exp->add_option("--config", exp_config, "JSON config")->required();
  exp->add_option("--output-dir", exp_out_dir, "Override the config's output_dir");

  // manifest
  auto* man = app.add_subcommand("manifest", "Summaries of every edge list in a directory");
  std::string man_dir, man_out;
  man->add_option("--dir", man_dir, "Dataset directory")->required();
  man->add_option("--out", man_out, "Output CSV (default stdout)");

  // matrix
  auto* mx = app.add_subcommand("matrix", "Overlap matrix across several experiment configs");
  std::vector<std::string> mx_configs;
  std::string mx_out;
  mx->add_option("--config", mx_configs, "JSON configs")->required();
  mx->add_option("--out", mx_out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : ns::exit_code(ns::ErrorKind::kUsage);
  }

  try {
    if (*gen) {
      gen_spec.model = ns::parse_generator_model(gen_model);
      if (gen_avg) gen_spec.target_avg_degree = *gen_avg;
      if (gen_m) gen_spec.m = *gen_m;
      write_graph(gen_out, ns::generate(gen_spec));
    } else if (*red) {
      const ns::Method method = ns::parse_method(red_method);
      ns::require(method == ns::Method::kNrdc || method == ns::Method::kNrdcPrime,
                  ns::ErrorKind::kConfig, "reduce supports nrdc and nrdc-prime");
      if (red_level) red_params.q = ns::removal_ratio_for_level(*red_level);
      if (red_q) red_params.q = *red_q;
      const ns::Graph g = ns::read_edge_list(red_in);
      const ns::Reduction r = method == ns::Method::kNrdc ? ns::nrdc(g, red_params)
                                                          : ns::nrdc_prime(g, red_params);
      write_graph(red_out, r.graph);
      if (!red_trace.empty()) {
        const auto& t = r.trace;
        write_json(red_trace, {{"method", red_method},
                               {"q", red_params.q},
                               {"k_min", red_params.k_min},
                               {"removed_nodes", t.removed_nodes},
                               {"lcc_dropped_nodes", t.lcc_dropped_nodes},
                               {"pruned_edges", edges_json(t.pruned_edges)},
                               {"avg_degree_before", t.avg_degree_before},
                               {"avg_degree_after", t.avg_degree_after},
                               {"connected_after", t.connected_after},
                               {"pruning_applied", t.pruning_applied},
                               {"stalled", t.stalled},
                               {"sweeps", t.sweeps}});
      }
    } else if (*smp) {
      smp_spec.method = ns::parse_sampler_method(smp_method);
      write_graph(smp_out, ns::sample(ns::read_edge_list(smp_in), smp_spec));
    } else if (*sir) {
      const ns::Graph g = ns::read_edge_list(sir_in);
      sir_params.time_grid = ns::default_time_grid(g, sir_params, sir_grid);
      const ns::SirCurve c = ns::ensemble_curve(g, sir_params);
      write_table(sir_out, {{"t", "s", "i", "r"}, {c.time_grid, c.s_mean, c.i_mean, c.r_mean}});
    } else if (*prof) {
      const ns::Graph g = ns::read_edge_list(prof_in);
      const auto p =
          ns::spreading_profile(g, ns::uniform_grid(beta_min, beta_max, beta_steps), prof_params);
      write_table(prof_out, {{"beta", "rho_r"}, {p.beta_grid, p.rho_r}});
    } else if (*spec) {
      const ns::Graph g = ns::read_edge_list(spec_in);
      const auto grid = ns::log_grid(tau_min, tau_max, tau_steps);
      const auto s = ns::parse_spectral_estimator(spec_estimator) == ns::SpectralEstimator::kDense
                         ? ns::spectral_summary(g, grid, max_dense)
                         : ns::stochastic_spectral_summary(g, grid, stoch);
      write_table(spec_out, {{"tau", "z", "z_norm", "entropy", "free_energy"},
                             {s.tau_grid, s.z, s.z_norm, s.entropy, s.free_energy}});
    } else if (*ovl) {
      const ns::NumericTable base = ns::read_csv(std::filesystem::path(ovl_base));
      const ns::NumericTable other = ns::read_csv(std::filesystem::path(ovl_other));
      ns::require(base.column("beta") == other.column("beta"), ns::ErrorKind::kUsage,
                  "profiles must share the same beta grid");
      ns::require(ovl_interp == "linear" || ovl_interp == "cubic", ns::ErrorKind::kConfig,
                  "--interp must be linear or cubic");
      const auto r = ns::f_overlap(base.column("beta"), base.column("rho_r"),
                                   other.column("rho_r"), ovl_fine,
                                   ovl_interp == "linear" ? ns::Interpolation::kLinear
                                                          : ns::Interpolation::kCubicSpline);
      write_json(ovl_out, {{"f_overlap", r.f_overlap},
                           {"s_delta", r.s_delta},
                           {"fine_grid_points", r.fine_grid_points}});
    } else if (*exp) {
      ns::ExperimentConfig config = ns::load_config(exp_config);
      if (!exp_out_dir.empty()) config.output_dir = exp_out_dir;
      ns::require(!config.output_dir.empty(), ns::ErrorKind::kConfig,
                  "experiment needs output_dir in the config or --output-dir");
      const ns::ExperimentResult result = ns::run_experiment(config);
      for (const auto& e : result.errors) {
        std::cerr << "stage " << e.stage << " level " << e.level << " (" << e.kind
                  << "): " << e.message << '\n';
      }
      for (const auto& lr : result.levels) {
        if (lr.overlap) {
          std::cout << "level " << lr.level << " f_overlap " << ns::format_double(lr.overlap->f_overlap)
                    << '\n';
        }
      }
      // Outputs of the healthy stages are kept; the exit code reflects the
      // first failure.
      if (!result.errors.empty()) {
        const std::string& kind = result.errors.front().kind;
        if (kind == "capability") return ns::exit_code(ns::ErrorKind::kCapability);
        if (kind == "config" || kind == "usage") return ns::exit_code(ns::ErrorKind::kConfig);
        return ns::exit_code(ns::ErrorKind::kData);
      }
    } else if (*man) {
      const auto rows = ns::dataset_manifest(man_dir);
      if (man_out.empty() || man_out == "-") {
        ns::write_manifest_csv(std::cout, rows);
      } else {
        std::ofstream out(man_out);
        ns::write_manifest_csv(out, rows);
      }
    } else if (*mx) {
      std::vector<ns::ExperimentConfig> configs;
      for (const auto& path : mx_configs) configs.push_back(ns::load_config(path));
      const auto rows = ns::overlap_matrix_report(configs);
      if (mx_out.empty() || mx_out == "-") {
        ns::write_overlap_matrix_csv(std::cout, rows);
      } else {
        std::ofstream out(mx_out);
        ns::write_overlap_matrix_csv(out, rows);
      }
    }
  } catch (const ns::Error& e) {
    std::cerr << "error (" << ns::to_string(e.kind()) << "): " << e.what() << '\n';
    return ns::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
