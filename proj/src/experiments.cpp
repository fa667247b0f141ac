#include "nblab/experiments.hpp"

#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>

#include "nblab/analysis.hpp"
#include "nblab/generators.hpp"
#include "nblab/parallel.hpp"
#include "nblab/rng.hpp"

namespace nblab {

using ordered_json = nlohmann::ordered_json;

nlohmann::ordered_json ExperimentConfig::to_json() const {
  ordered_json j;
  j["experiment"] = experiment;
  j["n"] = n;
  j["c_bar"] = c_bar;
  j["delta_sweep"] = delta_sweep;
  j["clique_sizes"] = clique_sizes;
  j["control"] = control;
  j["motif_size"] = motif_size;
  j["c_sweep"] = c_sweep;
  j["c0"] = c0;
  j["dtau_per_n"] = dtau_per_n;
  j["rewire_max_attempts"] = rewire_max_attempts;
  j["samples"] = samples;
  j["base_seed"] = base_seed;
  j["k_eigs"] = k_eigs;
  j["tol_sym"] = tol_sym;
  j["tol_b"] = tol_b;
  j["imag_tol"] = imag_tol;
  j["giant_component"] = giant_component;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const ordered_json& j) {
  ExperimentConfig cfg;
  if (j.contains("experiment")) cfg.experiment = j.at("experiment").get<std::string>();
  cfg = defaults(cfg.experiment);
  auto load = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  load("n", cfg.n);
  load("c_bar", cfg.c_bar);
  load("delta_sweep", cfg.delta_sweep);
  load("clique_sizes", cfg.clique_sizes);
  load("control", cfg.control);
  load("motif_size", cfg.motif_size);
  load("c_sweep", cfg.c_sweep);
  load("c0", cfg.c0);
  load("dtau_per_n", cfg.dtau_per_n);
  load("rewire_max_attempts", cfg.rewire_max_attempts);
  load("samples", cfg.samples);
  load("base_seed", cfg.base_seed);
  load("k_eigs", cfg.k_eigs);
  load("tol_sym", cfg.tol_sym);
  load("tol_b", cfg.tol_b);
  load("imag_tol", cfg.imag_tol);
  load("giant_component", cfg.giant_component);
  return cfg;
}

ExperimentConfig ExperimentConfig::defaults(const std::string& experiment) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  if (experiment == "fig4") {
    cfg.n = 2000;
  } else if (experiment == "rewire-scan") {
    cfg.n = 500;
    cfg.c_bar = 5.0;
    cfg.delta_sweep = {0, 2, 4, 6, 8};
    cfg.samples = 5;
  }
  return cfg;
}

std::uint64_t coord_bits(double v) { return std::bit_cast<std::uint64_t>(v); }

std::uint64_t sample_seed(std::uint64_t base_seed, std::initializer_list<std::uint64_t> coords) {
  std::uint64_t h = 0;
  for (std::uint64_t c : coords) h = hash_combine(h, c);
  return base_seed ^ h;
}

namespace {

// Locale-independent double formatting for the summary tables.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// Rows for the top real eigenpairs of B on one graph. On solver failure a
// single flagged row is appended instead.
void append_b_rows(std::vector<ResultRecord>& rows, const Graph& g,
                   const ExperimentConfig& cfg, ResultRecord proto, int k,
                   int& excluded) {
  proto.matrix = "B";
  proto.n_nodes = g.node_count();
  try {
    const MatrixOperator op = op_nonbacktracking(g);
    SolverOptions opts;
    opts.tol = cfg.tol_b;
    const auto reals = top_real_eigs(op, k, opts);
    int rank = 0;
    for (const auto& p : reals) {
      ResultRecord r = proto;
      r.rank = ++rank;
      r.eval_re = p.value.real();
      r.eval_im = p.value.imag();
      r.residual = p.residual;
      r.ipr_full = ipr(p.vector);
      try {
        const Eigen::VectorXcd node = nb_node_part(p);
        r.ipr_node = ipr(node);
        if (g.has_labels()) r.overlap = overlap(sign_partition(phase_aligned_real(node)), g);
      } catch (const std::runtime_error&) {
        // degenerate pair: keep the eigenvalue row, node-space fields stay NaN
      }
      rows.push_back(std::move(r));
    }
  } catch (const ConvergenceError& e) {
    ResultRecord r = std::move(proto);
    r.converged = false;
    r.residual = e.best_residual;
    rows.push_back(std::move(r));
    ++excluded;
  }
}

// Rows for a symmetric operator (k extremal pairs per selector).
void append_sym_rows(std::vector<ResultRecord>& rows, const Graph& g,
                     const MatrixOperator& op, Which which,
                     const ExperimentConfig& cfg, ResultRecord proto, int k,
                     int& excluded) {
  proto.matrix = op.name();
  proto.n_nodes = g.node_count();
  try {
    SolverOptions opts;
    opts.tol = cfg.tol_sym;
    const auto pairs = topk_eigs(op, k, which, opts);
    int rank = 0;
    for (const auto& p : pairs) {
      ResultRecord r = proto;
      r.rank = ++rank;
      r.eval_re = p.value.real();
      r.eval_im = p.value.imag();
      r.residual = p.residual;
      const Eigen::VectorXd v = p.vector.real();
      r.ipr_node = ipr(v);
      if (g.has_labels()) r.overlap = overlap(sign_partition(v), g);
      rows.push_back(std::move(r));
    }
  } catch (const ConvergenceError& e) {
    ResultRecord r = std::move(proto);
    r.converged = false;
    r.residual = e.best_residual;
    rows.push_back(std::move(r));
    ++excluded;
  }
}

struct TaskOutput {
  std::vector<ResultRecord> rows;
  int excluded = 0;
};

ExperimentResult gather(int task_count, const std::function<TaskOutput(int)>& task) {
  std::vector<TaskOutput> slots(task_count);
  parallel_for(task_count, [&](int i) { slots[i] = task(i); });
  ExperimentResult result;
  for (auto& s : slots) {
    result.records.insert(result.records.end(), s.rows.begin(), s.rows.end());
    result.excluded_nonconverged += s.excluded;
  }
  sort_records(result.records);
  return result;
}

}  // namespace

ExperimentResult run_fig3(const ExperimentConfig& cfg) {
  // Grid: (delta, motif) x samples; motif 0 encodes the no-motif control.
  std::vector<std::pair<double, int>> grid;
  for (double delta : cfg.delta_sweep) {
    if (cfg.control) grid.emplace_back(delta, 0);
    for (int n : cfg.clique_sizes) grid.emplace_back(delta, n);
  }
  const int tasks = static_cast<int>(grid.size()) * cfg.samples;

  return gather(tasks, [&](int t) {
    const auto [delta, clique_n] = grid[t / cfg.samples];
    const int sample = t % cfg.samples;
    const std::uint64_t seed =
        sample_seed(cfg.base_seed, {coord_bits(delta), static_cast<std::uint64_t>(clique_n),
                                    static_cast<std::uint64_t>(sample)});
    Timer timer;
    TaskOutput out;

    Rng rng(seed);
    SbmParams params{cfg.n, cfg.c_bar + 0.5 * delta, cfg.c_bar - 0.5 * delta};
    Graph base = sbm_sample(params, rng);
    Graph g = largest_component(base).graph;
    if (clique_n > 0) g = attach_motif_pair(g, Clique{clique_n}, rng);

    ResultRecord proto;
    proto.experiment = cfg.experiment;
    proto.c_bar = cfg.c_bar;
    proto.delta = delta;
    proto.motif = clique_n > 0 ? "clique" : "none";
    proto.motif_size = clique_n > 0 ? clique_n : -1;
    proto.sample = sample;
    proto.seed = seed;
    append_b_rows(out.rows, g, cfg, proto, cfg.k_eigs, out.excluded);
    const double wall = timer.seconds();
    for (auto& r : out.rows) r.wall_s = wall;
    return out;
  });
}

ExperimentResult run_fig4(const ExperimentConfig& cfg) {
  const double delta = 2.0 * cfg.c0 - 1.0;  // c_in - c_out with c_in + c_out = 2 c0
  const int tasks = static_cast<int>(cfg.c_sweep.size()) * cfg.samples;

  return gather(tasks, [&](int t) {
    const int c = cfg.c_sweep[t / cfg.samples];
    const int sample = t % cfg.samples;
    const std::uint64_t seed =
        sample_seed(cfg.base_seed, {static_cast<std::uint64_t>(c),
                                    static_cast<std::uint64_t>(sample)});
    Timer timer;
    TaskOutput out;

    Rng rng(seed);
    Graph base = regular_sbm(cfg.n, cfg.c0, cfg.c0 + 0.5 * delta, cfg.c0 - 0.5 * delta, rng);
    Graph g = largest_component(base).graph;
    g = attach_motif_pair(g, RegularMotif{cfg.motif_size, c - 1}, rng);

    ResultRecord proto;
    proto.experiment = cfg.experiment;
    proto.delta = delta;
    proto.motif = "regular";
    proto.motif_size = cfg.motif_size;
    proto.c = c;
    proto.c0 = cfg.c0;
    proto.sample = sample;
    proto.seed = seed;
    append_b_rows(out.rows, g, cfg, proto, cfg.k_eigs, out.excluded);
    const double wall = timer.seconds();
    for (auto& r : out.rows) r.wall_s = wall;
    return out;
  });
}

ExperimentResult run_rewire_scan(const ExperimentConfig& cfg) {
  std::vector<std::pair<double, double>> grid;
  for (double delta : cfg.delta_sweep)
    for (double dtau : cfg.dtau_per_n) grid.emplace_back(delta, dtau);
  const int tasks = static_cast<int>(grid.size()) * cfg.samples;

  ExperimentResult result = gather(tasks, [&](int t) {
    const auto [delta, dtau_ratio] = grid[t / cfg.samples];
    const int sample = t % cfg.samples;
    const std::uint64_t seed =
        sample_seed(cfg.base_seed, {coord_bits(delta), coord_bits(dtau_ratio),
                                    static_cast<std::uint64_t>(sample)});
    Timer timer;
    TaskOutput out;

    Rng rng(seed);
    SbmParams params{cfg.n, cfg.c_bar + 0.5 * delta, cfg.c_bar - 0.5 * delta};
    Graph base = largest_component(sbm_sample(params, rng)).graph;
    const auto target = static_cast<std::int64_t>(std::llround(dtau_ratio * cfg.n));
    RewireResult rewired =
        rewire_increase_triangles(base, target, rng, cfg.rewire_max_attempts);
    const Graph& g = rewired.graph;

    ResultRecord proto;
    proto.experiment = cfg.experiment;
    proto.c_bar = cfg.c_bar;
    proto.delta = delta;
    proto.dtau_target = static_cast<double>(target);
    proto.dtau_achieved = static_cast<double>(rewired.achieved_delta);
    proto.sample = sample;
    proto.seed = seed;

    append_sym_rows(out.rows, g, op_laplacian(g), Which::Smallest, cfg, proto, 2, out.excluded);
    append_sym_rows(out.rows, g, op_norm_laplacian(g), Which::Smallest, cfg, proto, 2, out.excluded);
    append_sym_rows(out.rows, g, op_modularity(g), Which::LargestReal, cfg, proto, 2, out.excluded);
    append_b_rows(out.rows, g, cfg, proto, std::max(2, std::min(cfg.k_eigs, 3)), out.excluded);
    const double wall = timer.seconds();
    for (auto& r : out.rows) r.wall_s = wall;
    return out;
  });

  // Density table: mean IPR of the designated eigenvector per grid point.
  std::map<std::tuple<double, double, std::string>, std::vector<double>> cells;
  for (const auto& r : result.records) {
    if (!r.converged || std::isnan(r.ipr_node)) continue;
    const int want_rank = (r.matrix == "L" || r.matrix == "NL" || r.matrix == "B") ? 2 : 1;
    if (r.rank != want_rank) continue;
    cells[{r.delta, r.dtau_target / cfg.n, r.matrix}].push_back(r.ipr_node);
  }
  std::string csv = "delta,dtau_per_n,matrix,mean_ipr,se_ipr,n_samples\n";
  for (const auto& [key, vals] : cells) {
    const auto& [delta, dtau, matrix] = key;
    double mean = 0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(vals.size());
    double var = 0;
    for (double v : vals) var += (v - mean) * (v - mean);
    const double se = vals.size() > 1 ? std::sqrt(var / (vals.size() * (vals.size() - 1.0))) : 0.0;
    csv += fmt(delta) + "," + fmt(dtau) + "," + matrix + "," + fmt(mean) + "," +
           fmt(se) + "," + std::to_string(vals.size()) + "\n";
  }
  result.summary_csv = std::move(csv);
  return result;
}

ExperimentResult run_real_ipr(const Graph& g, const ExperimentConfig& cfg) {
  if (g.node_count() < 1 || !is_connected(g))
    throw std::invalid_argument("run_real_ipr: graph must be connected");
  if (g.min_degree() < 1) throw std::invalid_argument("run_real_ipr: graph has isolated nodes");

  ExperimentResult result;
  ResultRecord proto;
  proto.experiment = "real-ipr";
  proto.seed = cfg.base_seed;
  proto.sample = 0;
  Timer timer;

  const int k = std::min(cfg.k_eigs, g.node_count() - 1);
  append_sym_rows(result.records, g, op_laplacian(g), Which::Smallest, cfg, proto, k,
                  result.excluded_nonconverged);
  append_sym_rows(result.records, g, op_norm_laplacian(g), Which::Smallest, cfg, proto, k,
                  result.excluded_nonconverged);
  append_sym_rows(result.records, g, op_modularity(g), Which::LargestReal, cfg, proto, k,
                  result.excluded_nonconverged);
  append_b_rows(result.records, g, cfg, proto, std::min(cfg.k_eigs, 2 * g.node_count() - 1),
                result.excluded_nonconverged);
  const double wall = timer.seconds();
  for (auto& r : result.records) r.wall_s = wall;
  sort_records(result.records);

  std::string csv = "matrix,max_ipr,n_eigs\n";
  for (const std::string matrix : {"L", "NL", "M", "B"}) {
    double max_ipr = NAN;
    int count = 0;
    for (const auto& r : result.records) {
      if (r.matrix != matrix || !r.converged || std::isnan(r.ipr_node)) continue;
      ++count;
      if (std::isnan(max_ipr) || r.ipr_node > max_ipr) max_ipr = r.ipr_node;
    }
    csv += matrix + std::string(",") + (std::isnan(max_ipr) ? "" : fmt(max_ipr)) + "," +
           std::to_string(count) + "\n";
  }
  result.summary_csv = std::move(csv);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "fig3") return run_fig3(cfg);
  if (cfg.experiment == "fig4") return run_fig4(cfg);
  if (cfg.experiment == "rewire-scan") return run_rewire_scan(cfg);
  throw std::invalid_argument("unknown experiment: " + cfg.experiment);
}

std::filesystem::path emit(const ExperimentResult& result, const ExperimentConfig& cfg,
                           const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto csv_path = out_dir / "records.csv";
  write_text_file(csv_path, to_csv(result.records));
  write_text_file(out_dir / "records.jsonl", to_jsonl(result.records));
  if (!result.summary_csv.empty())
    write_text_file(out_dir / "summary.csv", result.summary_csv);

  ordered_json manifest;
  manifest["tool"] = "nblab";
  manifest["version"] = "0.1.0";
  manifest["experiment"] = cfg.experiment;
  manifest["base_seed"] = cfg.base_seed;
  manifest["config"] = cfg.to_json();
  manifest["workers"] = worker_count();
  manifest["records"] = result.records.size();
  manifest["excluded_nonconverged"] = result.excluded_nonconverged;
  manifest["columns"] = csv_columns();
  write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return csv_path;
}

}  // namespace nblab
