// nblab command-line driver: graph generation, spectra, IPR tables,
// bisection, and the batch experiments.
#include <CLI11.hpp>

#include <charconv>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "nblab/analysis.hpp"
#include "nblab/edge_list.hpp"
#include "nblab/experiments.hpp"
#include "nblab/generators.hpp"
#include "nblab/operators.hpp"
#include "nblab/records.hpp"

namespace {

using namespace nblab;

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

MatrixOperator make_operator(const Graph& g, const std::string& name) {
  if (name == "A") return op_adjacency(g);
  if (name == "L") return op_laplacian(g);
  if (name == "NL") return op_norm_laplacian(g);
  if (name == "M") return op_modularity(g);
  if (name == "B") return op_nonbacktracking(g);
  throw CLI::ValidationError("matrix must be one of A, L, NL, M, B");
}

std::optional<MotifSpec> parse_motif(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  if (kind == "clique") {
    if (colon == std::string::npos) throw CLI::ValidationError("motif: expected clique:<n>");
    return Clique{std::stoi(text.substr(colon + 1))};
  }
  if (kind == "regular") {
    const auto second = text.find(':', colon + 1);
    if (colon == std::string::npos || second == std::string::npos)
      throw CLI::ValidationError("motif: expected regular:<size>:<inner_degree>");
    return RegularMotif{std::stoi(text.substr(colon + 1, second - colon - 1)),
                        std::stoi(text.substr(second + 1))};
  }
  throw CLI::ValidationError("motif: unknown kind '" + kind + "'");
}

struct GenArgs {
  std::string model = "sbm";
  int n = 1000;
  double c_in = 4.0, c_out = 2.0;
  int degree = 3;
  int c0 = 3;
  std::string motif;
  std::uint64_t seed = 1;
  bool giant = false;
  std::string out;
  std::string labels_out;
};

Graph generate(const GenArgs& a) {
  Rng rng(a.seed);
  Graph g;
  if (a.model == "sbm") {
    g = sbm_sample({a.n, a.c_in, a.c_out}, rng);
  } else if (a.model == "regular") {
    g = regular_graph(a.n, a.degree, rng);
  } else if (a.model == "regular-sbm") {
    g = regular_sbm(a.n, a.c0, a.c_in, a.c_out, rng);
  } else {
    throw CLI::ValidationError("model must be sbm, regular, or regular-sbm");
  }
  if (a.giant || parse_motif(a.motif)) g = largest_component(g).graph;
  if (const auto motif = parse_motif(a.motif)) g = attach_motif_pair(g, *motif, rng);
  return g;
}

void write_labels(const std::string& path, const Graph& g) {
  nlohmann::ordered_json j;
  j["labels"] = g.labels();
  std::vector<std::string> roles;
  if (g.has_roles()) {
    static const char* names[] = {"base", "omega", "omega_tilde", "boundary"};
    for (int v = 0; v < g.node_count(); ++v)
      roles.push_back(names[static_cast<int>(g.role(v))]);
  }
  j["roles"] = roles;
  write_text_file(path, j.dump() + "\n");
}

Graph load_graph(const std::string& input, bool giant) {
  return ingest_edge_list(input, {giant}).graph;
}

Which parse_which(const std::string& w) {
  if (w == "largest-real") return Which::LargestReal;
  if (w == "largest-magnitude") return Which::LargestMagnitude;
  if (w == "smallest") return Which::Smallest;
  throw CLI::ValidationError("which must be largest-real, largest-magnitude, or smallest");
}

// Shared spectrum retrieval for the spectrum/ipr/partition subcommands: B
// uses the top-real escalation path, symmetric matrices the stated selector.
std::vector<EigenPair> spectrum_for(const Graph& g, const std::string& matrix,
                                    const std::string& which, int k, double tol) {
  const MatrixOperator op = make_operator(g, matrix);
  SolverOptions opts;
  opts.tol = tol;
  if (matrix == "B") return top_real_eigs(op, k, opts);
  return topk_eigs(op, std::min(k, op.dim()), parse_which(which), opts);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"spectral graph partitioning lab: non-backtracking, Laplacian and modularity methods"};
  app.require_subcommand(1);

  // ---- gen ----
  GenArgs gen;
  auto* cmd_gen = app.add_subcommand("gen", "generate a graph and write an edge list");
  cmd_gen->add_option("--model", gen.model, "sbm | regular | regular-sbm");
  cmd_gen->add_option("--n", gen.n, "node count");
  cmd_gen->add_option("--cin", gen.c_in, "within-block rate c_in");
  cmd_gen->add_option("--cout", gen.c_out, "cross-block rate c_out");
  cmd_gen->add_option("--degree", gen.degree, "degree for the regular model");
  cmd_gen->add_option("--c0", gen.c0, "base degree for regular-sbm");
  cmd_gen->add_option("--motif", gen.motif, "attach a motif pair: clique:<n> or regular:<size>:<d>");
  cmd_gen->add_option("--seed", gen.seed, "rng seed");
  cmd_gen->add_flag("--giant", gen.giant, "restrict to the largest component");
  cmd_gen->add_option("--out", gen.out, "output edge-list path")->required();
  cmd_gen->add_option("--labels-out", gen.labels_out, "optional JSON with labels/roles");

  // ---- spectrum / ipr / partition ----
  struct {
    std::string input, matrix = "B", which = "largest-real", csv;
    int k = 6;
    double tol = 0;
    bool no_giant = false;
  } spec;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", spec.input, "edge-list file")->required();
    cmd->add_option("--matrix", spec.matrix, "A | L | NL | M | B");
    cmd->add_option("--which", spec.which, "largest-real | largest-magnitude | smallest");
    cmd->add_option("--k", spec.k, "number of eigenpairs");
    cmd->add_option("--tol", spec.tol, "solver tolerance (0 = default)");
    cmd->add_flag("--no-giant", spec.no_giant, "keep the whole graph, not just the giant component");
    cmd->add_option("--csv", spec.csv, "also write the table to this CSV file");
  };
  auto* cmd_spectrum = app.add_subcommand("spectrum", "top eigenvalues of a graph matrix");
  add_common(cmd_spectrum);
  auto* cmd_ipr = app.add_subcommand("ipr", "eigenvalues with IPR per eigenvector");
  add_common(cmd_ipr);
  auto* cmd_partition = app.add_subcommand("partition", "sign bisection from the matrix's informative eigenvector");
  add_common(cmd_partition);

  // ---- real-ipr ----
  struct {
    std::string input, out_dir = "real-ipr-out";
    int k = 6;
    bool no_giant = false;
  } ripr;
  auto* cmd_ripr = app.add_subcommand("real-ipr", "largest IPR among the informative eigenvectors of L, NL, M, B");
  cmd_ripr->add_option("--input", ripr.input, "edge-list file")->required();
  cmd_ripr->add_option("--k", ripr.k, "eigenpairs per matrix");
  cmd_ripr->add_flag("--no-giant", ripr.no_giant, "keep the whole graph");
  cmd_ripr->add_option("--out-dir", ripr.out_dir, "output directory");

  // ---- experiment ----
  struct {
    std::string name, config, out_dir = "experiment-out";
    std::optional<int> n, samples, k_eigs, c0, motif_size;
    std::optional<double> c_bar;
    std::optional<std::uint64_t> base_seed;
    std::vector<double> delta_sweep, dtau_per_n;
    std::vector<int> clique_sizes, c_sweep;
  } exp;
  auto* cmd_exp = app.add_subcommand("experiment", "run a batch experiment grid");
  cmd_exp->add_option("name", exp.name, "fig3 | fig4 | rewire-scan")->required();
  cmd_exp->add_option("--config", exp.config, "JSON config file (flags override)");
  cmd_exp->add_option("--out-dir", exp.out_dir, "output directory");
  cmd_exp->add_option("--n", exp.n, "base node count");
  cmd_exp->add_option("--c-bar", exp.c_bar, "mean degree of the sbm base");
  cmd_exp->add_option("--samples", exp.samples, "samples per grid point");
  cmd_exp->add_option("--base-seed", exp.base_seed, "base seed");
  cmd_exp->add_option("--k-eigs", exp.k_eigs, "eigenpairs per sample");
  cmd_exp->add_option("--c0", exp.c0, "base degree (fig4)");
  cmd_exp->add_option("--motif-size", exp.motif_size, "motif size (fig4)");
  cmd_exp->add_option("--delta-sweep", exp.delta_sweep, "c_in - c_out grid")->expected(-1);
  cmd_exp->add_option("--clique-sizes", exp.clique_sizes, "clique sizes (fig3)")->expected(-1);
  cmd_exp->add_option("--c-sweep", exp.c_sweep, "motif degrees (fig4)")->expected(-1);
  cmd_exp->add_option("--dtau-per-n", exp.dtau_per_n, "triangle-gain grid (rewire-scan)")->expected(-1);

  CLI11_PARSE(app, argc, argv);

  if (cmd_gen->parsed()) {
    const Graph g = generate(gen);
    write_edge_list(gen.out, g);
    if (!gen.labels_out.empty()) write_labels(gen.labels_out, g);
    std::printf("wrote %s: %d nodes, %lld edges\n", gen.out.c_str(), g.node_count(),
                static_cast<long long>(g.edge_count()));
    return 0;
  }

  if (cmd_spectrum->parsed() || cmd_ipr->parsed()) {
    const Graph g = load_graph(spec.input, !spec.no_giant);
    const auto pairs = spectrum_for(g, spec.matrix, spec.which, spec.k, spec.tol);
    const bool with_ipr = cmd_ipr->parsed();
    std::string table = with_ipr ? "rank,eval_re,eval_im,ipr_node,ipr_full,residual\n"
                                 : "rank,eval_re,eval_im,residual\n";
    int rank = 0;
    for (const auto& p : pairs) {
      ++rank;
      std::string row = std::to_string(rank) + "," + fmt(p.value.real()) + "," +
                        fmt(p.value.imag());
      if (with_ipr) {
        if (spec.matrix == "B") {
          row += "," + fmt(ipr(nb_node_part(p))) + "," + fmt(ipr(p.vector));
        } else {
          row += "," + fmt(ipr(p.vector)) + ",";
        }
      }
      row += "," + fmt(p.residual) + "\n";
      table += row;
    }
    std::fputs(table.c_str(), stdout);
    if (!spec.csv.empty()) write_text_file(spec.csv, table);
    return 0;
  }

  if (cmd_partition->parsed()) {
    const Graph g = load_graph(spec.input, !spec.no_giant);
    // informative eigenvector: second-smallest for L/NL, largest for M/A,
    // second-largest real for B
    Eigen::VectorXd v;
    if (spec.matrix == "L" || spec.matrix == "NL") {
      const auto pairs = spectrum_for(g, spec.matrix, "smallest", 2, spec.tol);
      v = pairs.at(1).vector.real();
    } else if (spec.matrix == "B") {
      const auto pairs = spectrum_for(g, "B", "", 2, spec.tol);
      if (pairs.size() < 2) throw std::runtime_error("partition: fewer than 2 real eigenvalues");
      v = phase_aligned_real(nb_node_part(pairs.at(1)));
    } else {
      const auto pairs = spectrum_for(g, spec.matrix, "largest-real", 1, spec.tol);
      v = pairs.at(0).vector.real();
    }
    const auto part = sign_partition(v);
    std::string out = "node,module\n";
    for (int i = 0; i < g.node_count(); ++i)
      out += std::to_string(i) + "," + std::to_string(part.assignment[i]) + "\n";
    std::fputs(out.c_str(), stdout);
    if (!spec.csv.empty()) write_text_file(spec.csv, out);
    return 0;
  }

  if (cmd_ripr->parsed()) {
    const Graph g = load_graph(ripr.input, !ripr.no_giant);
    ExperimentConfig cfg = ExperimentConfig::defaults("real-ipr");
    cfg.k_eigs = ripr.k;
    cfg.giant_component = !ripr.no_giant;
    const auto result = run_real_ipr(g, cfg);
    const auto csv = emit(result, cfg, ripr.out_dir);
    std::fputs(result.summary_csv.c_str(), stdout);
    std::printf("records: %s\n", csv.string().c_str());
    return 0;
  }

  if (cmd_exp->parsed()) {
    ExperimentConfig cfg = exp.config.empty()
                               ? ExperimentConfig::defaults(exp.name)
                               : ExperimentConfig::from_json(
                                     nlohmann::ordered_json::parse(read_text_file(exp.config)));
    cfg.experiment = exp.name;
    if (exp.n) cfg.n = *exp.n;
    if (exp.c_bar) cfg.c_bar = *exp.c_bar;
    if (exp.samples) cfg.samples = *exp.samples;
    if (exp.base_seed) cfg.base_seed = *exp.base_seed;
    if (exp.k_eigs) cfg.k_eigs = *exp.k_eigs;
    if (exp.c0) cfg.c0 = *exp.c0;
    if (exp.motif_size) cfg.motif_size = *exp.motif_size;
    if (!exp.delta_sweep.empty()) cfg.delta_sweep = exp.delta_sweep;
    if (!exp.clique_sizes.empty()) cfg.clique_sizes = exp.clique_sizes;
    if (!exp.c_sweep.empty()) cfg.c_sweep = exp.c_sweep;
    if (!exp.dtau_per_n.empty()) cfg.dtau_per_n = exp.dtau_per_n;
    const auto result = run_experiment(cfg);
    const auto csv = emit(result, cfg, exp.out_dir);
    std::printf("%zu records (%d non-converged) -> %s\n", result.records.size(),
                result.excluded_nonconverged, csv.string().c_str());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
