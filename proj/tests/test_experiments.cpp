#include "doctest.h"

#include <cmath>
#include <set>

#include "nblab/analysis.hpp"
#include "nblab/experiments.hpp"
#include "nblab/generators.hpp"
#include "nblab/operators.hpp"

using namespace nblab;

namespace {

ExperimentConfig mini_fig3() {
  ExperimentConfig cfg = ExperimentConfig::defaults("fig3");
  cfg.n = 300;
  cfg.delta_sweep = {4.0};
  cfg.clique_sizes = {6};
  cfg.samples = 2;
  cfg.k_eigs = 3;
  cfg.base_seed = 42;
  return cfg;
}

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return simplify(edges, n);
}

Graph star_graph(int leaves) {
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return simplify(edges, leaves + 1);
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("config json round-trip with partial overrides") {
  ExperimentConfig cfg = ExperimentConfig::defaults("fig4");
  CHECK(cfg.n == 2000);
  const auto j = cfg.to_json();
  const auto back = ExperimentConfig::from_json(j);
  CHECK(back.to_json() == j);

  nlohmann::ordered_json partial;
  partial["experiment"] = "fig4";
  partial["samples"] = 3;
  const auto merged = ExperimentConfig::from_json(partial);
  CHECK(merged.samples == 3);
  CHECK(merged.n == 2000);  // fig4 default preserved
}

TEST_CASE("per-sample seeds are pairwise distinct across the grid") {
  std::set<std::uint64_t> seeds;
  int total = 0;
  for (double delta : {0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0})
    for (int motif : {0, 4, 5, 6, 7})
      for (int sample = 0; sample < 100; ++sample) {
        seeds.insert(sample_seed(7, {coord_bits(delta), static_cast<std::uint64_t>(motif),
                                     static_cast<std::uint64_t>(sample)}));
        ++total;
      }
  CHECK(static_cast<int>(seeds.size()) == total);
}

TEST_CASE("fig3 mini run produces ranked B records") {
  const auto cfg = mini_fig3();
  const auto result = run_fig3(cfg);
  REQUIRE(!result.records.empty());
  int motif_rank2 = 0, control_rows = 0;
  for (const auto& r : result.records) {
    CHECK(r.experiment == "fig3");
    CHECK(r.matrix == "B");
    if (r.motif == "clique" && r.rank == 2) {
      ++motif_rank2;
      // second-largest real eigenvalue should sit at the constructed value
      CHECK(r.eval_re == doctest::Approx(3.618034).epsilon(0.02));
      CHECK(r.ipr_node == doctest::Approx(1.0 / 12.0).epsilon(0.35));
    }
    if (r.motif == "none") ++control_rows;
    if (r.converged && r.rank >= 1) {
      CHECK(r.residual <= cfg.tol_b);
      CHECK(r.ipr_node >= 1.0 / (r.n_nodes + 1e-9));
      CHECK(r.ipr_node <= 1.0);
    }
  }
  CHECK(motif_rank2 == cfg.samples);
  CHECK(control_rows > 0);
}

TEST_CASE("fig3 reruns are byte-identical") {
  const auto cfg = mini_fig3();
  const auto a = run_fig3(cfg);
  const auto b = run_fig3(cfg);
  CHECK(to_csv(a.records) == to_csv(b.records));
}

TEST_CASE("fig4 mini run matches the regular-motif prediction loosely") {
  ExperimentConfig cfg = ExperimentConfig::defaults("fig4");
  cfg.n = 500;
  cfg.motif_size = 20;
  cfg.c_sweep = {6};
  cfg.samples = 2;
  cfg.k_eigs = 3;
  cfg.base_seed = 11;
  const auto result = run_fig4(cfg);
  int rank2 = 0;
  for (const auto& r : result.records) {
    if (r.rank != 2) continue;
    ++rank2;
    CHECK(r.eval_re == doctest::Approx(3.618034).epsilon(0.05));
    CHECK(r.ipr_node == doctest::Approx(1.0 / 40.0).epsilon(0.5));
  }
  CHECK(rank2 == cfg.samples);
}

TEST_CASE("rewire-scan mini emits records and a density table") {
  ExperimentConfig cfg = ExperimentConfig::defaults("rewire-scan");
  cfg.n = 200;
  cfg.delta_sweep = {2.0};
  cfg.dtau_per_n = {0.0, 0.25};
  cfg.samples = 2;
  cfg.base_seed = 5;
  const auto result = run_rewire_scan(cfg);
  REQUIRE(!result.records.empty());
  std::set<std::string> matrices;
  for (const auto& r : result.records) {
    matrices.insert(r.matrix);
    if (r.dtau_target == 0.0) CHECK(r.dtau_achieved == 0.0);
  }
  CHECK(matrices == std::set<std::string>{"L", "NL", "M", "B"});
  CHECK(result.summary_csv.find("delta,dtau_per_n,matrix,mean_ipr") == 0);
  // the three symmetric matrices always contribute a cell per grid point;
  // B's second real eigenvalue may be absent on small noisy samples
  const auto lines = std::count(result.summary_csv.begin(), result.summary_csv.end(), '\n');
  CHECK(lines >= 1 + 1 * 2 * 3);
  CHECK(lines <= 1 + 1 * 2 * 4);
}

TEST_CASE("emit writes csv, jsonl, summary and manifest") {
  const auto cfg = mini_fig3();
  const auto result = run_fig3(cfg);
  const auto dir = std::filesystem::temp_directory_path() / "nblab-emit-test";
  std::filesystem::remove_all(dir);
  const auto csv_path = emit(result, cfg, dir);
  CHECK(std::filesystem::exists(csv_path));
  CHECK(std::filesystem::exists(dir / "records.jsonl"));
  CHECK(std::filesystem::exists(dir / "manifest.json"));
  const auto parsed = from_csv(read_text_file(csv_path));
  REQUIRE(parsed.size() == result.records.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    ResultRecord want = result.records[i];
    want.wall_s = NAN;  // not part of the CSV body
    CHECK(parsed[i] == want);
  }
  const auto manifest = nlohmann::json::parse(read_text_file(dir / "manifest.json"));
  CHECK(manifest.at("base_seed").get<std::uint64_t>() == cfg.base_seed);
  CHECK(manifest.at("experiment") == "fig3");
  std::filesystem::remove_all(dir);
}

TEST_CASE("real-ipr on K10: range bounds and invariant eigenspace oracle") {
  Graph k10 = complete_graph(10);
  ExperimentConfig cfg = ExperimentConfig::defaults("real-ipr");
  const auto result = run_real_ipr(k10, cfg);
  REQUIRE(!result.records.empty());
  for (const auto& r : result.records) {
    if (!r.converged) continue;
    CHECK(r.ipr_node >= 1.0 / 10.0 - 1e-12);
    CHECK(r.ipr_node <= 1.0 + 1e-12);
  }
  // B of K10 has exactly two real eigenvalues, 8 and 1, both simple with
  // uniform node parts (IPR exactly 1/10)
  int b_rows = 0;
  for (const auto& r : result.records) {
    if (r.matrix != "B") continue;
    ++b_rows;
    CHECK((std::abs(r.eval_re - 8.0) <= 1e-8 || std::abs(r.eval_re - 1.0) <= 1e-8));
    CHECK(r.ipr_node == doctest::Approx(0.1).epsilon(1e-8));
  }
  CHECK(b_rows == 2);

  // Eigenspace-invariant localization bound: the degenerate eigenspaces of a
  // vertex-transitive graph contain fully delocalized representatives. The
  // zero-sum pattern (+1 x5, -1 x5)/sqrt(10) is an exact eigenvector of L, A
  // and M with IPR 1/10 <= 0.2.
  Eigen::VectorXd v(10);
  for (int i = 0; i < 10; ++i) v[i] = i < 5 ? 1.0 : -1.0;
  v /= v.norm();
  const Eigen::VectorXd lv = op_laplacian(k10).apply(v);
  CHECK((lv - 10.0 * v).norm() <= 1e-12);
  const Eigen::VectorXd mv = op_modularity(k10).apply(v);
  const double m_eig = v.dot(mv);
  CHECK((mv - m_eig * v).norm() <= 1e-12);
  CHECK(ipr(v) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("real-ipr on the star K1,50: closed-form spectrum and hub-range IPR") {
  Graph star = star_graph(50);
  ExperimentConfig cfg = ExperimentConfig::defaults("real-ipr");
  const auto result = run_real_ipr(star, cfg);
  for (const auto& r : result.records) {
    if (!r.converged) continue;
    CHECK(r.ipr_node >= 1.0 / 51.0 - 1e-12);
    CHECK(r.ipr_node <= 1.0 + 1e-12);
  }

  // dense oracle: L spectrum of K1,n is {0, 1 (x n-1), n+1}
  const auto dense = dense_eig(op_laplacian(star));
  CHECK(std::abs(dense.front().value) <= 1e-10);
  for (std::size_t i = 1; i + 1 < dense.size(); ++i)
    CHECK(std::abs(dense[i].value - 1.0) <= 1e-10);
  CHECK(std::abs(dense.back().value - 51.0) <= 1e-10);

  // the eigenvalue-1 eigenspace contains a two-leaf difference vector with
  // IPR exactly 1/2 (hub localization scale, from the closed-form spectrum)
  Eigen::VectorXd u = Eigen::VectorXd::Zero(51);
  u[1] = 1.0 / std::sqrt(2.0);
  u[2] = -1.0 / std::sqrt(2.0);
  const Eigen::VectorXd lu = op_laplacian(star).apply(u);
  CHECK((lu - u).norm() <= 1e-14);
  CHECK(ipr(u) == doctest::Approx(0.5).epsilon(1e-14));

  // both L and NL report their 6 smallest eigenpairs
  int l_rows = 0, nl_rows = 0;
  for (const auto& r : result.records) {
    l_rows += r.matrix == "L" && r.converged;
    nl_rows += r.matrix == "NL" && r.converged;
  }
  CHECK(l_rows == 6);
  CHECK(nl_rows == 6);
}

TEST_CASE("real-ipr summary lists per-matrix maxima") {
  Graph k10 = complete_graph(10);
  const auto result = run_real_ipr(k10, ExperimentConfig::defaults("real-ipr"));
  CHECK(result.summary_csv.find("matrix,max_ipr,n_eigs") == 0);
  CHECK(std::count(result.summary_csv.begin(), result.summary_csv.end(), '\n') == 5);
}

TEST_CASE("real-ipr rejects disconnected or isolated-node graphs") {
  Graph two = simplify(std::vector<Edge>{{0, 1}, {2, 3}}, 4);
  CHECK_THROWS_AS(run_real_ipr(two, ExperimentConfig{}), std::invalid_argument);
  Graph iso = simplify(std::vector<Edge>{{0, 1}}, 3);
  CHECK_THROWS_AS(run_real_ipr(iso, ExperimentConfig{}), std::invalid_argument);
}

}  // TEST_SUITE
