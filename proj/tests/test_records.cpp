#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <set>

#include "nblab/edge_list.hpp"
#include "nblab/records.hpp"
#include "nblab/rng.hpp"

using namespace nblab;

namespace {

ResultRecord random_record(Rng& rng) {
  ResultRecord r;
  r.experiment = rng.next_bool() ? "fig3" : "rewire-scan";
  r.n_nodes = static_cast<int>(rng.next_index(5000));
  r.c_bar = rng.next_double() * 10;
  r.delta = rng.next_bool() ? rng.next_double() * 6 : NAN;
  r.motif = rng.next_bool() ? "clique" : "";
  r.motif_size = rng.next_bool() ? static_cast<int>(rng.next_index(50)) : -1;
  r.c = rng.next_bool() ? static_cast<int>(3 + rng.next_index(8)) : -1;
  r.c0 = 3;
  r.dtau_target = rng.next_bool() ? std::floor(rng.next_double() * 500) : NAN;
  r.dtau_achieved = r.dtau_target;
  r.sample = static_cast<int>(rng.next_index(100));
  r.seed = rng.next_u64();
  r.matrix = rng.next_bool() ? "B" : "L";
  r.rank = static_cast<int>(1 + rng.next_index(6));
  r.eval_re = (rng.next_double() - 0.5) * 8;
  r.eval_im = rng.next_bool() ? (rng.next_double() - 0.5) * 1e-9 : 0.0;
  r.ipr_node = rng.next_double();
  r.ipr_full = r.matrix == "B" ? rng.next_double() : NAN;
  r.overlap = rng.next_bool() ? 0.5 + 0.5 * rng.next_double() : NAN;
  r.residual = rng.next_double() * 1e-9;
  r.converged = rng.next_index(10) != 0;
  r.wall_s = rng.next_double() * 100;
  return r;
}

}  // namespace

TEST_SUITE("records") {

TEST_CASE("single record gives a two-line csv") {
  ResultRecord r;
  r.experiment = "fig3";
  r.matrix = "B";
  const std::string csv = to_csv({r});
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.substr(0, 10) == "experiment");
}

TEST_CASE("csv and jsonl round-trip 1000 random records") {
  Rng rng(123);
  std::vector<ResultRecord> records;
  for (int i = 0; i < 1000; ++i) records.push_back(random_record(rng));

  const auto csv_back = from_csv(to_csv(records));
  REQUIRE(csv_back.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    ResultRecord want = records[i];
    want.wall_s = NAN;  // wall time is not part of the CSV body
    CHECK(csv_back[i] == want);
  }

  const auto jsonl_back = from_jsonl(to_jsonl(records));
  REQUIRE(jsonl_back.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) CHECK(jsonl_back[i] == records[i]);
}

TEST_CASE("emission is byte-deterministic") {
  Rng rng(9);
  std::vector<ResultRecord> records;
  for (int i = 0; i < 50; ++i) records.push_back(random_record(rng));
  CHECK(to_csv(records) == to_csv(records));
  CHECK(to_jsonl(records) == to_jsonl(records));
}

TEST_CASE("ingest a triangle edge list") {
  auto res = ingest_edge_list_text("0 1\n1 2\n2 0\n");
  CHECK(res.graph.node_count() == 3);
  CHECK(res.graph.edge_count() == 3);
  CHECK(res.raw_lines == 3);
}

TEST_CASE("ingest applies cleanup rules and giant-component default") {
  auto res = ingest_edge_list_text("a b\nb a\nc c\n");
  CHECK(res.graph.node_count() == 2);  // isolated c dropped
  CHECK(res.graph.edge_count() == 1);
  CHECK(res.raw_nodes == 3);
  CHECK(res.node_ids == std::vector<std::string>{"a", "b"});

  auto keep = ingest_edge_list_text("a b\nb a\nc c\n", {false});
  CHECK(keep.graph.node_count() == 3);
}

TEST_CASE("ingest reports malformed lines with their number") {
  CHECK_THROWS_WITH_AS(ingest_edge_list_text("0 1\n2\n"),
                       doctest::Contains("line 2"), std::runtime_error);
  CHECK_THROWS_WITH_AS(ingest_edge_list_text("0 1 7 9\n"),
                       doctest::Contains("line 1"), std::runtime_error);
  CHECK_THROWS_AS(ingest_edge_list_text("# only a comment\n"), std::runtime_error);
}

TEST_CASE("ingest ignores comments and matches an independent recount") {
  // synthetic snap-style file with comments, duplicates, and reversals
  Rng rng(77);
  std::string text = "# synthetic snap-style header\n# nodes 60\n";
  std::set<std::pair<int, int>> unique_edges;
  int max_id = 0;
  for (int i = 0; i < 500; ++i) {
    int u = static_cast<int>(rng.next_index(60));
    int v = static_cast<int>(rng.next_index(60));
    text += std::to_string(u) + "\t" + std::to_string(v) + "\n";
    max_id = std::max({max_id, u, v});
    if (u != v) unique_edges.emplace(std::min(u, v), std::max(u, v));
  }
  auto res = ingest_edge_list_text(text, {false});
  CHECK(res.graph.edge_count() == static_cast<std::int64_t>(unique_edges.size()));
  CHECK(res.raw_lines == 500);
}

TEST_CASE("edge list files round-trip through write and ingest") {
  Rng rng(5);
  const auto dir = std::filesystem::temp_directory_path() / "nblab-records-test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "graph.txt";
  Graph g = ingest_edge_list_text("0 1\n1 2\n2 0\n3 0\n").graph;
  write_edge_list(path, g);
  auto back = ingest_edge_list(path);
  CHECK(back.graph == Graph(g.node_count(), g.edges()));
  std::filesystem::remove_all(dir);
}

TEST_CASE("sort_records is canonical") {
  Rng rng(11);
  std::vector<ResultRecord> records;
  for (int i = 0; i < 200; ++i) records.push_back(random_record(rng));
  auto a = records;
  sort_records(a);
  // shuffle differently, sort again
  auto b = records;
  std::reverse(b.begin(), b.end());
  sort_records(b);
  CHECK(to_csv(a) == to_csv(b));
}

}  // TEST_SUITE
