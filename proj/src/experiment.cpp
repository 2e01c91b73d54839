#include "netshrink/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "netshrink/csv.hpp"
#include "netshrink/edge_list.hpp"
#include "netshrink/error.hpp"
#include "netshrink/samplers.hpp"
#include "netshrink/seeding.hpp"

namespace netshrink {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr Method kAllMethods[] = {Method::kRdn, Method::kCnarw, Method::kMhrw, Method::kNrdc,
                                  Method::kNrdcPrime};

std::vector<double> grid_from_json(const json& j, const char* what) {
  if (j.is_array()) return j.get<std::vector<double>>();
  require(j.is_object(), ErrorKind::kConfig,
          std::string(what) + " must be a list or {min, max, steps}");
  const double lo = j.at("min").get<double>();
  const double hi = j.at("max").get<double>();
  const auto steps = j.at("steps").get<std::size_t>();
  if (j.value("spacing", std::string("linear")) == "log") return log_grid(lo, hi, steps);
  return uniform_grid(lo, hi, steps);
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  for (const auto& [key, value] : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&key](const char* a) { return key == a; });
    require(known, ErrorKind::kConfig,
            std::string("unknown key '") + key + "' in " + where);
  }
}

json summary_json(const NetworkSummary& s) {
  return {{"n", s.n},
          {"m", s.m},
          {"avg_degree", s.avg_degree},
          {"heterogeneity", s.heterogeneity},
          {"n_lcc", s.n_lcc},
          {"s_lcc", s.s_lcc}};
}

NumericTable summary_table(const NetworkSummary& s) {
  return {{"n", "m", "avg_degree", "heterogeneity", "n_lcc", "s_lcc"},
          {{static_cast<double>(s.n)},
           {static_cast<double>(s.m)},
           {s.avg_degree},
           {s.heterogeneity},
           {static_cast<double>(s.n_lcc)},
           {s.s_lcc}}};
}

NumericTable curve_table(const SirCurve& c) {
  return {{"t", "s", "i", "r"}, {c.time_grid, c.s_mean, c.i_mean, c.r_mean}};
}

NumericTable profile_table(const SpreadingProfile& p) {
  return {{"beta", "rho_r"}, {p.beta_grid, p.rho_r}};
}

NumericTable spectral_table(const SpectralSummary& s) {
  return {{"tau", "z", "z_norm", "entropy", "free_energy"},
          {s.tau_grid, s.z, s.z_norm, s.entropy, s.free_energy}};
}

// Runs `body`, recording its wall time and converting failures into a
// StageError. Returns whether the stage succeeded.
bool run_stage(const std::string& stage, unsigned level, LevelResult& result,
               std::vector<StageError>& errors, const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  try {
    body();
  } catch (const Error& e) {
    errors.push_back({stage, level, to_string(e.kind()), e.what()});
    ok = false;
  } catch (const std::exception& e) {
    errors.push_back({stage, level, "internal", e.what()});
    ok = false;
  }
  result.seconds[stage] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return ok;
}

}  // namespace

Method parse_method(std::string_view name) {
  if (name == "nrdc") return Method::kNrdc;
  if (name == "nrdc-prime") return Method::kNrdcPrime;
  if (name == "rdn") return Method::kRdn;
  if (name == "mhrw") return Method::kMhrw;
  if (name == "cnarw") return Method::kCnarw;
  fail(ErrorKind::kConfig, "unknown method '" + std::string(name) + "'");
}

const char* to_string(Method method) {
  switch (method) {
    case Method::kNrdc: return "nrdc";
    case Method::kNrdcPrime: return "nrdc-prime";
    case Method::kRdn: return "rdn";
    case Method::kMhrw: return "mhrw";
    case Method::kCnarw: return "cnarw";
  }
  return "?";
}

ExperimentConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorKind::kConfig, std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig c;
  try {
    require(j.is_object(), ErrorKind::kConfig, "config must be a JSON object");
    reject_unknown(j,
                   {"schema_version", "name", "network", "method", "levels", "reduction", "sir",
                    "beta_grid", "tau_grid", "spectral", "overlap", "output_dir", "master_seed"},
                   "config");
    require(j.value("schema_version", 0) == kConfigSchemaVersion, ErrorKind::kConfig,
            "unsupported config schema_version (expected " +
                std::to_string(kConfigSchemaVersion) + ")");
    c.name = j.value("name", std::string());

    const json& net = j.at("network");
    reject_unknown(net, {"generator", "edge_list", "use_lcc", "name"}, "network");
    if (net.contains("generator")) {
      const json& gen = net.at("generator");
      reject_unknown(gen, {"model", "n", "avg_degree", "m", "seed"}, "network.generator");
      GeneratorSpec spec;
      spec.model = parse_generator_model(gen.at("model").get<std::string>());
      spec.n = gen.at("n").get<std::size_t>();
      spec.target_avg_degree = gen.value("avg_degree", 0.0);
      spec.m = gen.value("m", std::size_t{0});
      spec.seed = gen.value("seed", std::uint64_t{0});
      c.network.generator = spec;
    } else {
      c.network.edge_list = net.at("edge_list").get<std::string>();
    }
    c.network.use_lcc = net.value("use_lcc", false);
    c.network.name = net.value("name", std::string());

    c.method = parse_method(j.value("method", std::string("nrdc")));
    if (j.contains("levels")) c.levels = j.at("levels").get<std::vector<unsigned>>();

    if (j.contains("reduction")) {
      const json& r = j.at("reduction");
      reject_unknown(r, {"k_min", "degree_tolerance", "lcc_fallback"}, "reduction");
      c.reduction.k_min = r.value("k_min", c.reduction.k_min);
      c.reduction.degree_tolerance = r.value("degree_tolerance", c.reduction.degree_tolerance);
      c.reduction.lcc_fallback = r.value("lcc_fallback", c.reduction.lcc_fallback);
    }
    if (j.contains("sir")) {
      const json& s = j.at("sir");
      reject_unknown(s, {"gamma", "init_top_degree_frac", "runs", "curve_betas", "time_points"},
                     "sir");
      c.sir.gamma = s.value("gamma", c.sir.gamma);
      c.sir.init_top_degree_frac = s.value("init_top_degree_frac", c.sir.init_top_degree_frac);
      c.sir.runs = s.value("runs", c.sir.runs);
      if (s.contains("curve_betas")) c.curve_betas = s.at("curve_betas").get<std::vector<double>>();
      c.time_points = s.value("time_points", c.time_points);
    }
    if (j.contains("beta_grid")) c.beta_grid = grid_from_json(j.at("beta_grid"), "beta_grid");
    if (j.contains("tau_grid")) {
      json t = j.at("tau_grid");
      if (t.is_object() && !t.contains("spacing")) t["spacing"] = "log";
      c.tau_grid = grid_from_json(t, "tau_grid");
    }
    if (j.contains("spectral")) {
      const json& s = j.at("spectral");
      reject_unknown(s, {"enabled", "estimator", "max_dense_n", "probes", "moments"}, "spectral");
      c.spectral_enabled = s.value("enabled", true);
      c.estimator = parse_spectral_estimator(s.value("estimator", std::string("dense")));
      c.max_dense_n = s.value("max_dense_n", c.max_dense_n);
      c.stochastic.probes = s.value("probes", c.stochastic.probes);
      c.stochastic.moments = s.value("moments", c.stochastic.moments);
    }
    if (j.contains("overlap")) {
      c.fine_grid_points = j.at("overlap").value("fine_grid_points", c.fine_grid_points);
    }
    c.output_dir = j.value("output_dir", std::string());
    c.master_seed = j.value("master_seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    fail(ErrorKind::kConfig, std::string("invalid config: ") + e.what());
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::kConfig, "cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["name"] = c.name;
  json net;
  if (c.network.generator) {
    const auto& g = *c.network.generator;
    net["generator"] = {{"model", g.model == GeneratorModel::kErdosRenyi ? "er" : "ba"},
                        {"n", g.n},
                        {"avg_degree", g.target_avg_degree},
                        {"m", g.m},
                        {"seed", g.seed}};
  } else {
    net["edge_list"] = c.network.edge_list.string();
  }
  net["use_lcc"] = c.network.use_lcc;
  net["name"] = c.network.name;
  j["network"] = net;
  j["method"] = to_string(c.method);
  j["levels"] = c.levels;
  j["reduction"] = {{"k_min", c.reduction.k_min},
                    {"degree_tolerance", c.reduction.degree_tolerance},
                    {"lcc_fallback", c.reduction.lcc_fallback}};
  j["sir"] = {{"gamma", c.sir.gamma},
              {"init_top_degree_frac", c.sir.init_top_degree_frac},
              {"runs", c.sir.runs},
              {"curve_betas", c.curve_betas},
              {"time_points", c.time_points}};
  j["beta_grid"] = c.beta_grid;
  j["tau_grid"] = c.tau_grid;
  j["spectral"] = {{"enabled", c.spectral_enabled},
                   {"estimator", c.estimator == SpectralEstimator::kDense ? "dense" : "stochastic"},
                   {"max_dense_n", c.max_dense_n},
                   {"probes", c.stochastic.probes},
                   {"moments", c.stochastic.moments}};
  j["overlap"] = {{"fine_grid_points", c.fine_grid_points}};
  j["output_dir"] = c.output_dir.string();
  j["master_seed"] = c.master_seed;
  return j.dump(2);
}

void validate(const ExperimentConfig& c) {
  require(!c.levels.empty(), ErrorKind::kConfig, "levels must be non-empty");
  for (unsigned l : c.levels) {
    require(l <= 30, ErrorKind::kConfig, "level above 30 is not supported");
  }
  if (c.network.generator) {
    validate(*c.network.generator);
  } else {
    require(!c.network.edge_list.empty(), ErrorKind::kConfig,
            "network needs a generator or an edge_list");
  }
  ReductionParams r = c.reduction;
  r.q = 0.0;
  validate(r);
  SirParams s = c.sir;
  validate(s);
  require(!c.curve_betas.empty(), ErrorKind::kConfig, "sir.curve_betas must be non-empty");
  for (double b : c.curve_betas) require(b >= 0.0, ErrorKind::kConfig, "curve beta < 0");
  require(c.time_points >= 2, ErrorKind::kConfig, "sir.time_points must be >= 2");
  require(c.beta_grid.size() >= 2, ErrorKind::kConfig, "beta grid needs >= 2 points");
  for (std::size_t k = 0; k < c.beta_grid.size(); ++k) {
    require(c.beta_grid[k] >= 0.0 && c.beta_grid[k] <= 2.0, ErrorKind::kConfig,
            "beta grid must lie in [0, 2]");
    require(k == 0 || c.beta_grid[k] > c.beta_grid[k - 1], ErrorKind::kConfig,
            "beta grid must strictly increase");
  }
  require(!c.tau_grid.empty(), ErrorKind::kConfig, "tau grid must be non-empty");
  for (double t : c.tau_grid) require(t >= 0.0, ErrorKind::kConfig, "tau grid must be >= 0");
  require(c.fine_grid_points >= 3, ErrorKind::kConfig, "fine_grid_points must be >= 3");
}

std::string network_name(const ExperimentConfig& c) {
  if (!c.network.name.empty()) return c.network.name;
  if (c.network.generator) {
    const auto& g = *c.network.generator;
    return std::string(g.model == GeneratorModel::kErdosRenyi ? "ER" : "BA") +
           "(N=" + std::to_string(g.n) + ")";
  }
  return c.network.edge_list.stem().string();
}

Graph load_network(const ExperimentConfig& c) {
  Graph g;
  if (c.network.generator) {
    g = generate(*c.network.generator);
  } else {
    require(fs::exists(c.network.edge_list), ErrorKind::kData,
            "dataset file not found: " + c.network.edge_list.string());
    g = read_edge_list(c.network.edge_list);
  }
  require(g.num_nodes() >= 2, ErrorKind::kData, "network needs at least two nodes");
  if (c.network.use_lcc) g = largest_connected_component(g);
  return g;
}

Graph level_graph(const Graph& input, const ExperimentConfig& c, unsigned level) {
  if (level == 0) return input;
  const std::uint64_t seed = derive_seed(c.master_seed, "reduce", level);
  switch (c.method) {
    case Method::kNrdc:
    case Method::kNrdcPrime: {
      ReductionParams params = c.reduction;
      params.q = removal_ratio_for_level(level);
      return c.method == Method::kNrdc ? nrdc(input, params).graph
                                       : nrdc_prime(input, params).graph;
    }
    case Method::kRdn:
    case Method::kMhrw:
    case Method::kCnarw: {
      SamplerSpec spec;
      spec.method = c.method == Method::kRdn    ? SamplerMethod::kRandomNode
                    : c.method == Method::kMhrw ? SamplerMethod::kMetropolisHastingsWalk
                                                : SamplerMethod::kCommonNeighborAwareWalk;
      spec.sr = std::ldexp(1.0, -static_cast<int>(level));
      spec.seed = seed;
      Graph sub = sample(input, spec);
      if (c.reduction.lcc_fallback && !is_connected(sub)) sub = largest_connected_component(sub);
      return sub;
    }
  }
  fail(ErrorKind::kConfig, "unknown method");
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  ExperimentResult result;
  result.network = network_name(config);
  result.method = config.method;
  result.output_dir = config.output_dir;
  const bool write = !config.output_dir.empty();

  std::set<unsigned> level_set(config.levels.begin(), config.levels.end());
  level_set.insert(0);

  const Graph input = load_network(config);

  // Time grids come from the unreduced network so all levels share them.
  std::vector<std::vector<double>> time_grids;
  for (double beta : config.curve_betas) {
    SirParams p = config.sir;
    p.beta = beta;
    p.seed = derive_seed(config.master_seed, "timegrid", 0);
    time_grids.push_back(default_time_grid(input, p, config.time_points));
  }

  for (unsigned level : level_set) {
    LevelResult lr;
    lr.level = level;
    lr.reduce_seed = derive_seed(config.master_seed, "reduce", level);
    lr.sir_seed = derive_seed(config.master_seed, "sir", level);
    lr.profile_seed = derive_seed(config.master_seed, "profile", level);
    const fs::path dir = config.output_dir / ("level_" + std::to_string(level));
    if (write) fs::create_directories(dir);

    Graph g;
    const bool reduced = run_stage("reduce", level, lr, result.errors, [&] {
      g = level_graph(input, config, level);
      if (write) write_edge_list(dir / "graph.edges", g);
      if (g.num_nodes() >= 2) {
        lr.summary = summarize(g);
        if (write) write_csv(dir / "summary.csv", summary_table(*lr.summary));
      }
    });
    if (reduced) {
      run_stage("sir", level, lr, result.errors, [&] {
        for (std::size_t b = 0; b < config.curve_betas.size(); ++b) {
          SirParams p = config.sir;
          p.beta = config.curve_betas[b];
          p.seed = lr.sir_seed;
          p.time_grid = time_grids[b];
          lr.curves.push_back(ensemble_curve(g, p));
          if (write) {
            write_csv(dir / ("sir_beta_" + format_double(p.beta) + ".csv"),
                      curve_table(lr.curves.back()));
          }
        }
      });
      run_stage("profile", level, lr, result.errors, [&] {
        SirParams p = config.sir;
        p.seed = lr.profile_seed;
        lr.profile = spreading_profile(g, config.beta_grid, p);
        if (write) write_csv(dir / "profile.csv", profile_table(*lr.profile));
      });
      if (config.spectral_enabled) {
        run_stage("spectral", level, lr, result.errors, [&] {
          if (config.estimator == SpectralEstimator::kDense) {
            lr.spectral = spectral_summary(g, config.tau_grid, config.max_dense_n);
          } else {
            StochasticTraceOptions options = config.stochastic;
            options.seed = derive_seed(config.master_seed, "spectral", level);
            lr.spectral = stochastic_spectral_summary(g, config.tau_grid, options);
          }
          if (write) write_csv(dir / "spectral.csv", spectral_table(*lr.spectral));
        });
      }
    }
    result.levels.push_back(std::move(lr));
  }

  const LevelResult& base = result.levels.front();
  for (auto& lr : result.levels) {
    if (base.profile && lr.profile) {
      lr.overlap = f_overlap(config.beta_grid, base.profile->rho_r, lr.profile->rho_r,
                             config.fine_grid_points);
    }
    if (base.curves.size() == lr.curves.size()) {
      for (std::size_t b = 0; b < lr.curves.size(); ++b) {
        lr.mae.push_back(curve_mae(base.curves[b], lr.curves[b]));
      }
    }
    if (base.spectral && lr.spectral) {
      lr.z_norm_mae = mean_absolute_error(base.spectral->z_norm, lr.spectral->z_norm);
    }
  }

  if (write) {
    NumericTable overlap{{"level", "f_overlap", "s_delta", "z_norm_mae"}, {{}, {}, {}, {}}};
    NumericTable mae{{"level", "beta", "mae_r", "mae_i"}, {{}, {}, {}, {}}};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& lr : result.levels) {
      overlap.columns[0].push_back(lr.level);
      overlap.columns[1].push_back(lr.overlap ? lr.overlap->f_overlap : nan);
      overlap.columns[2].push_back(lr.overlap ? lr.overlap->s_delta : nan);
      overlap.columns[3].push_back(lr.z_norm_mae.value_or(nan));
      for (std::size_t b = 0; b < lr.mae.size(); ++b) {
        mae.columns[0].push_back(lr.level);
        mae.columns[1].push_back(config.curve_betas[b]);
        mae.columns[2].push_back(lr.mae[b].r);
        mae.columns[3].push_back(lr.mae[b].i);
      }
    }
    write_csv(config.output_dir / "overlap.csv", overlap);
    write_csv(config.output_dir / "mae.csv", mae);

    json report;
    report["config"] = json::parse(config_to_json(config));
    report["config"].erase("output_dir");
    report["network"] = result.network;
    report["method"] = to_string(config.method);
    report["master_seed"] = config.master_seed;
    json timings = json::object();
    for (const auto& lr : result.levels) {
      json entry{{"level", lr.level},
                 {"seeds",
                  {{"reduce", lr.reduce_seed}, {"sir", lr.sir_seed}, {"profile", lr.profile_seed}}}};
      if (lr.summary) entry["summary"] = summary_json(*lr.summary);
      if (lr.overlap) {
        entry["f_overlap"] = lr.overlap->f_overlap;
        entry["s_delta"] = lr.overlap->s_delta;
        entry["fine_grid_points"] = lr.overlap->fine_grid_points;
      }
      if (lr.z_norm_mae) entry["z_norm_mae"] = *lr.z_norm_mae;
      report["levels"].push_back(entry);
      timings["level_" + std::to_string(lr.level)] = lr.seconds;
    }
    report["errors"] = json::array();
    for (const auto& e : result.errors) {
      report["errors"].push_back(
          {{"stage", e.stage}, {"level", e.level}, {"kind", e.kind}, {"message", e.message}});
    }
    std::ofstream(config.output_dir / "result.json") << report.dump(2) << '\n';
    std::ofstream(config.output_dir / "timings.json") << timings.dump(2) << '\n';
  }
  return result;
}

std::vector<ManifestRow> dataset_manifest(const fs::path& dir) {
  require(fs::is_directory(dir), ErrorKind::kData, "not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<ManifestRow> rows;
  for (const auto& file : files) {
    ManifestRow row;
    row.name = file.stem().string();
    try {
      row.summary = summarize(read_edge_list(file));
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_manifest_csv(std::ostream& out, const std::vector<ManifestRow>& rows) {
  out << "name,n,m,avg_degree,heterogeneity,s_lcc,error\n";
  for (const auto& row : rows) {
    out << row.name << ',';
    if (row.summary) {
      const auto& s = *row.summary;
      out << s.n << ',' << s.m << ',' << format_double(s.avg_degree) << ','
          << format_double(s.heterogeneity) << ',' << format_double(s.s_lcc) << ",\n";
    } else {
      std::string message = row.error;
      std::replace(message.begin(), message.end(), ',', ';');
      std::replace(message.begin(), message.end(), '\n', ' ');
      out << ",,,,," << message << '\n';
    }
  }
}

std::vector<OverlapMatrixRow> overlap_matrix_from_results(const std::vector<ExperimentConfig>& configs,
                                           const std::vector<ExperimentResult>& results) {
  require(configs.size() == results.size(), ErrorKind::kUsage,
          "overlap matrix: one result per config is required");
  for (const auto& c : configs) {
    const auto& first = configs.front();
    require(c.beta_grid == first.beta_grid && c.sir.runs == first.sir.runs &&
                c.sir.gamma == first.sir.gamma &&
                c.sir.init_top_degree_frac == first.sir.init_top_degree_frac &&
                c.fine_grid_points == first.fine_grid_points,
            ErrorKind::kUsage, "overlap matrix: configs must share the beta grid and SIR parameters");
  }
  std::map<std::tuple<std::string, unsigned, std::uint64_t>, OverlapMatrixRow> rows;
  std::vector<std::tuple<std::string, unsigned, std::uint64_t>> order;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    for (const auto& lr : results[k].levels) {
      if (!lr.overlap) continue;
      const auto key = std::make_tuple(results[k].network, lr.level, configs[k].master_seed);
      auto [it, inserted] = rows.try_emplace(key);
      if (inserted) {
        order.push_back(key);
        it->second.network = results[k].network;
        it->second.level = lr.level;
        it->second.seed = configs[k].master_seed;
      }
      if (configs[k].method == Method::kNrdcPrime) it->second.k_min = configs[k].reduction.k_min;
      it->second.f_overlap[configs[k].method] = lr.overlap->f_overlap;
    }
  }
  std::vector<OverlapMatrixRow> out;
  for (const auto& key : order) out.push_back(rows.at(key));
  return out;
}

std::vector<OverlapMatrixRow> overlap_matrix_report(const std::vector<ExperimentConfig>& configs) {
  require(!configs.empty(), ErrorKind::kUsage, "overlap matrix: no configs");
  // Validate sharing before spending time on runs.
  overlap_matrix_from_results(configs, std::vector<ExperimentResult>(configs.size()));
  std::vector<ExperimentResult> results;
  for (const auto& c : configs) results.push_back(run_experiment(c));
  return overlap_matrix_from_results(configs, results);
}

void write_overlap_matrix_csv(std::ostream& out, const std::vector<OverlapMatrixRow>& rows) {
  out << "network,level,k_min,seed";
  for (Method m : kAllMethods) out << ',' << to_string(m);
  out << '\n';
  for (const auto& row : rows) {
    out << row.network << ',' << row.level << ',';
    if (row.k_min) out << row.k_min;
    out << ',' << row.seed;
    for (Method m : kAllMethods) {
      out << ',';
      if (auto it = row.f_overlap.find(m); it != row.f_overlap.end()) {
        out << format_double(it->second);
      }
    }
    out << '\n';
  }
}

}  // namespace netshrink
