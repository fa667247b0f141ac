#ifndef NBLAB_EXPERIMENTS_HPP
#define NBLAB_EXPERIMENTS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nblab/graph.hpp"
#include "nblab/records.hpp"

namespace nblab {

// Desk-scale experiment configuration. The structural parameters mirror the
// reference setups; sizes and sample counts are configurable and default to
// laptop-friendly values.
struct ExperimentConfig {
  std::string experiment = "fig3";  // fig3 | fig4 | rewire-scan | real-ipr

  int n = 1000;        // base-graph node count
  double c_bar = 3.0;  // mean degree of the sbm base

  // fig3: clique pair on a sparse SBM
  std::vector<double> delta_sweep = {0, 1, 2, 3, 4, 5, 6};  // c_in - c_out
  std::vector<int> clique_sizes = {4, 5, 6, 7};
  bool control = true;  // also run the no-motif baseline

  // fig4: regular motif pair on a regular-SBM base
  int motif_size = 50;
  std::vector<int> c_sweep = {4, 5, 6, 7, 8};
  int c0 = 3;

  // rewire-scan: triangle-increasing rewiring grid
  std::vector<double> dtau_per_n = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::int64_t rewire_max_attempts = 0;  // 0 = generator default (100 |E|)

  int samples = 10;
  std::uint64_t base_seed = 1;
  int k_eigs = 6;
  double tol_sym = 1e-10;
  double tol_b = 1e-8;
  double imag_tol = 1e-8;
  bool giant_component = true;

  nlohmann::ordered_json to_json() const;
  static ExperimentConfig from_json(const nlohmann::ordered_json& j);
  // Experiment-specific defaults (e.g. fig4 uses n = 2000).
  static ExperimentConfig defaults(const std::string& experiment);
};

struct ExperimentResult {
  std::vector<ResultRecord> records;
  int excluded_nonconverged = 0;
  // Aggregated per-grid-point table (means over converged samples);
  // populated by rewire-scan and real-ipr.
  std::string summary_csv;
};

// Per-sample seed derivation: base_seed XOR hash(grid coordinates, sample).
std::uint64_t sample_seed(std::uint64_t base_seed, std::initializer_list<std::uint64_t> coords);
std::uint64_t coord_bits(double v);

ExperimentResult run_fig3(const ExperimentConfig& cfg);
ExperimentResult run_fig4(const ExperimentConfig& cfg);
ExperimentResult run_rewire_scan(const ExperimentConfig& cfg);
ExperimentResult run_real_ipr(const Graph& g, const ExperimentConfig& cfg);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Writes records.csv, records.jsonl, manifest.json (and summary.csv when
// present) under out_dir. Returns the csv path.
std::filesystem::path emit(const ExperimentResult& result, const ExperimentConfig& cfg,
                           const std::filesystem::path& out_dir);

}  // namespace nblab

#endif  // NBLAB_EXPERIMENTS_HPP
