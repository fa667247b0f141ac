#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "nblab/generators.hpp"
#include "nblab/graph.hpp"
#include "nblab/rng.hpp"

using namespace nblab;

namespace {

std::map<int, int> degree_histogram(const Graph& g) {
  std::map<int, int> h;
  for (int d : degree_sequence(g)) ++h[d];
  return h;
}

}  // namespace

TEST_SUITE("generators") {

TEST_CASE("sbm with zero rates is empty") {
  Graph g = sbm_sample({100, 0.0, 0.0}, 1);
  CHECK(g.node_count() == 100);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("sbm rejects bad rates") {
  CHECK_THROWS_AS(sbm_sample({10, 20.0, 1.0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(sbm_sample({10, 5.0, 6.0}, 1), std::invalid_argument);  // c_out > c_in
}

TEST_CASE("sbm mean degree c_bar=3 over 20 samples") {
  double total_deg = 0.0;
  int total_nodes = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = sbm_sample({1000, 4.0, 2.0}, seed);
    total_deg += 2.0 * static_cast<double>(g.edge_count());
    total_nodes += g.node_count();
  }
  const double mean = total_deg / total_nodes;
  CHECK(mean == doctest::Approx(3.0).epsilon(0.1));  // 3 +/- 0.3
}

TEST_CASE("sbm within/cross edge counts within 4 sigma of binomial expectation") {
  const int n = 200, half = 100, samples = 100;
  const double c_in = 5.0, c_out = 1.0;
  std::int64_t within = 0, cross = 0;
  for (std::uint64_t seed = 0; seed < samples; ++seed) {
    Graph g = sbm_sample({n, c_in, c_out}, seed);
    for (const auto& [u, v] : g.edges())
      ((u < half) == (v < half) ? within : cross) += 1;
  }
  const double within_trials = static_cast<double>(samples) * half * (half - 1);  // two blocks
  const double p_in = c_in / n;
  const double mu_w = within_trials * p_in;
  const double sd_w = std::sqrt(within_trials * p_in * (1 - p_in));
  CHECK(std::abs(within - mu_w) <= 4 * sd_w);

  const double cross_trials = static_cast<double>(samples) * half * half;
  const double p_out = c_out / n;
  const double mu_x = cross_trials * p_out;
  const double sd_x = std::sqrt(cross_trials * p_out * (1 - p_out));
  CHECK(std::abs(cross - mu_x) <= 4 * sd_x);
}

TEST_CASE("sbm labels mark equal blocks") {
  Graph g = sbm_sample({50, 3.0, 1.0}, 3);
  int ones = 0;
  for (int v = 0; v < g.node_count(); ++v) ones += g.label(v) == 1;
  CHECK(ones == 25);
}

TEST_CASE("generators are deterministic in the seed") {
  CHECK(sbm_sample({400, 4.0, 2.0}, 11) == sbm_sample({400, 4.0, 2.0}, 11));
  Rng a(5), b(5);
  CHECK(regular_graph(30, 3, a) == regular_graph(30, 3, b));
  CHECK(regular_sbm(100, 3, 5.0, 1.0, 17) == regular_sbm(100, 3, 5.0, 1.0, 17));
}

TEST_CASE("regular_graph n=4 d=3 is K4") {
  Rng rng(1);
  Graph g = regular_graph(4, 3, rng);
  CHECK(g.edge_count() == 6);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) CHECK(g.has_edge(i, j));
}

TEST_CASE("regular_graph degree contract") {
  Rng rng(2);
  Graph g = regular_graph(50, 5, rng);
  for (int d : degree_sequence(g)) CHECK(d == 5);
}

TEST_CASE("regular_graph 200 samples all simple and 3-regular") {
  Rng rng(3);
  for (int s = 0; s < 200; ++s) {
    Graph g = regular_graph(20, 3, rng);
    for (int d : degree_sequence(g)) REQUIRE(d == 3);
    REQUIRE(g.edge_count() == 30);
  }
}

TEST_CASE("regular_graph rejects infeasible parameters") {
  Rng rng(4);
  CHECK_THROWS_AS(regular_graph(5, 3, rng), std::invalid_argument);  // n*d odd
  CHECK_THROWS_AS(regular_graph(4, 4, rng), std::invalid_argument);  // d >= n
}

TEST_CASE("regular_sbm with c_out=0 gives two disjoint regular blocks") {
  Graph g = regular_sbm(60, 4, 8.0, 0.0, 9);
  for (int d : degree_sequence(g)) CHECK(d == 4);
  for (const auto& [u, v] : g.edges()) CHECK((u < 30) == (v < 30));
}

TEST_CASE("regular_sbm cross-edge count near n*c_out/4") {
  // c_in - c_out = 2*c0 - 1 setup: c_out = 1/2, expected cross edges = n/8
  for (std::uint64_t seed : {21u, 22u}) {
    Graph g = regular_sbm(10000, 3, 5.5, 0.5, seed);
    std::int64_t cross = 0;
    for (const auto& [u, v] : g.edges()) cross += (u < 5000) != (v < 5000);
    CHECK(std::abs(cross - 1250.0) <= 0.05 * 1250.0);
    for (int d : degree_sequence(g)) REQUIRE(d == 3);
  }
}

TEST_CASE("regular_sbm degree contract across seeds") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = regular_sbm(500, 4, 6.0, 2.0, seed);
    for (int d : degree_sequence(g)) REQUIRE(d == 4);
  }
}

TEST_CASE("regular_sbm rejects infeasible stub counts") {
  CHECK_THROWS_AS(regular_sbm(100, 3, 5.0, 2.0, 1), std::invalid_argument);  // c_in+c_out != 2c0
  CHECK_THROWS_AS(regular_sbm(10, 3, 6.0, 0.0, 1), std::invalid_argument);   // odd block stubs
}

TEST_CASE("attach_motif_pair clique n=3 adds 6 nodes and 12 edges") {
  Rng rng(31);
  Graph base = largest_component(sbm_sample({40, 5.0, 3.0}, rng)).graph;
  Graph g = attach_motif_pair(base, Clique{3}, rng);
  CHECK(g.node_count() == base.node_count() + 6);
  CHECK(g.edge_count() == base.edge_count() + 12);
}

TEST_CASE("attach_motif_pair regular motif nodes have degree c") {
  Rng rng(32);
  Graph base = regular_sbm(300, 3, 5.0, 1.0, rng);
  base = largest_component(base).graph;
  const int c = 6;
  Graph g = attach_motif_pair(base, RegularMotif{50, c - 1}, rng);
  for (int v = 0; v < g.node_count(); ++v)
    if (g.role(v) == MotifRole::Omega || g.role(v) == MotifRole::OmegaTilde)
      CHECK(g.degree(v) == c);
}

TEST_CASE("motif pair swap is a graph automorphism") {
  Rng rng(33);
  Graph base = largest_component(sbm_sample({80, 5.0, 3.0}, rng)).graph;
  const int n0 = base.node_count();
  const int m = 5;
  Graph g = attach_motif_pair(base, Clique{m}, rng);
  std::vector<int> pi(g.node_count());
  for (int v = 0; v < g.node_count(); ++v) pi[v] = v;
  for (int i = 0; i < m; ++i) std::swap(pi[n0 + i], pi[n0 + m + i]);
  for (const auto& [u, v] : g.edges()) CHECK(g.has_edge(pi[u], pi[v]));
}

TEST_CASE("attach_motif_pair applied twice keeps role invariants") {
  Rng rng(34);
  Graph base = largest_component(sbm_sample({200, 5.0, 3.0}, rng)).graph;
  Graph g = attach_motif_pair(base, Clique{4}, rng);
  g = attach_motif_pair(g, Clique{4}, rng);
  int omegas = 0;
  for (int v = 0; v < g.node_count(); ++v) {
    if (g.role(v) != MotifRole::Omega) continue;
    ++omegas;
    int boundary_nbrs = 0;
    for (int u : g.neighbors(v)) boundary_nbrs += g.role(u) == MotifRole::Boundary;
    CHECK(boundary_nbrs == 1);
  }
  CHECK(omegas == 8);
}

TEST_CASE("attach_motif_pair requires enough base nodes") {
  Rng rng(35);
  Graph tiny = simplify(std::vector<Edge>{{0, 1}, {1, 2}}, 3);
  CHECK_THROWS_AS(attach_motif_pair(tiny, Clique{4}, rng), std::invalid_argument);
}

TEST_CASE("rewire with zero target returns the graph unchanged") {
  Graph g = largest_component(sbm_sample({100, 5.0, 3.0}, 41)).graph;
  auto res = rewire_increase_triangles(g, 0, 42);
  CHECK(res.graph == g);
  CHECK(res.achieved_delta == 0);
}

TEST_CASE("rewire rejects disconnected input") {
  Graph g = simplify(std::vector<Edge>{{0, 1}, {2, 3}}, 4);
  CHECK_THROWS_AS(rewire_increase_triangles(g, 1, 1), std::invalid_argument);
}

TEST_CASE("6-cycle: exhaustive swap space has no acceptable move") {
  // Oracle: enumerate every double-edge swap of C6. Each swap that keeps the
  // graph simple and increases triangles splits it into two 3-cycles, so
  // under the connectivity constraint no proposal can be accepted and the
  // graph comes back unchanged.
  std::vector<Edge> cycle{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}};
  Graph c6 = simplify(cycle, 6);
  REQUIRE(triangle_count(c6) == 0);

  auto edges = c6.edges();
  int increasing = 0, increasing_connected = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (i == j) continue;
      for (int orient = 0; orient < 2; ++orient) {
        auto [a, b] = edges[i];
        auto [c, d] = edges[j];
        if (orient) std::swap(c, d);
        if (a == c || a == d || b == c || b == d) continue;
        if (c6.has_edge(a, c) || c6.has_edge(b, d)) continue;
        std::vector<Edge> next;
        for (std::size_t e = 0; e < edges.size(); ++e)
          if (e != i && e != j) next.push_back(edges[e]);
        next.emplace_back(std::min(a, c), std::max(a, c));
        next.emplace_back(std::min(b, d), std::max(b, d));
        Graph candidate = simplify(next, 6);
        if (candidate.edge_count() != 6) continue;  // collapsed a duplicate
        if (triangle_count(candidate) > 0) {
          ++increasing;
          if (is_connected(candidate)) ++increasing_connected;
        }
      }
    }
  }
  CHECK(increasing > 0);
  CHECK(increasing_connected == 0);

  auto res = rewire_increase_triangles(c6, 1, 7);
  CHECK(res.achieved_delta == 0);
  CHECK(res.graph == c6);
  CHECK(is_connected(res.graph));
}

TEST_CASE("rewire preserves degrees and connectivity, delta accounting exact") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    Graph base = largest_component(sbm_sample({1000, 7.0, 3.0}, rng)).graph;
    const auto before = triangle_count(base);
    auto res = rewire_increase_triangles(base, 200, rng);
    CHECK(degree_histogram(res.graph) == degree_histogram(base));
    CHECK(degree_sequence(res.graph) == degree_sequence(base));
    CHECK(is_connected(res.graph));
    CHECK(triangle_count(res.graph) - before == res.achieved_delta);
    CHECK(res.achieved_delta >= 200);
  }
}

}  // TEST_SUITE
