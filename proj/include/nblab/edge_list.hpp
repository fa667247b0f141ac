#ifndef NBLAB_EDGE_LIST_HPP
#define NBLAB_EDGE_LIST_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "nblab/graph.hpp"

namespace nblab {

struct IngestOptions {
  bool giant_component = true;  // restrict to the largest component
};

struct IngestResult {
  Graph graph;
  std::vector<std::string> node_ids;  // node_ids[v] = original id token
  int raw_nodes = 0;                  // distinct ids before component filtering
  std::int64_t raw_lines = 0;         // edge lines parsed
};

// Parses a text edge list: one edge per line, two whitespace-separated id
// tokens, '#'-prefixed comment lines ignored. Ids are remapped to 0..N-1 in
// first-appearance order, direction ignored, self-loops dropped, duplicate
// links collapsed. Throws std::runtime_error with the line number on
// malformed lines and on an empty graph.
IngestResult ingest_edge_list(const std::filesystem::path& path, IngestOptions opts = {});
IngestResult ingest_edge_list_text(const std::string& text, IngestOptions opts = {});

// Writes "u v" lines (plus a size header comment) for round-tripping
// generated graphs through the CLI.
void write_edge_list(const std::filesystem::path& path, const Graph& g);

}  // namespace nblab

#endif  // NBLAB_EDGE_LIST_HPP
