#include "nblab/edge_list.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "nblab/records.hpp"

namespace nblab {

IngestResult ingest_edge_list_text(const std::string& text, IngestOptions opts) {
  std::unordered_map<std::string, int> id_map;
  std::vector<std::string> ids;
  std::vector<Edge> raw_edges;
  std::int64_t line_no = 0, edge_lines = 0;

  auto intern = [&](const std::string& token) {
    auto [it, inserted] = id_map.try_emplace(token, static_cast<int>(ids.size()));
    if (inserted) ids.push_back(token);
    return it->second;
  };

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;  // blank line
    if (a[0] == '#') continue;
    if (!(ls >> b) || (ls >> extra))
      throw std::runtime_error("edge list parse error at line " + std::to_string(line_no) +
                               ": expected two whitespace-separated ids");
    ++edge_lines;
    const int ia = intern(a);
    const int ib = intern(b);
    raw_edges.emplace_back(ia, ib);
  }
  if (ids.empty()) throw std::runtime_error("edge list is empty");

  Graph g = simplify(raw_edges, static_cast<int>(ids.size()));
  IngestResult out;
  out.raw_nodes = g.node_count();
  out.raw_lines = edge_lines;
  if (opts.giant_component) {
    auto [sub, orig] = largest_component(g);
    out.graph = std::move(sub);
    out.node_ids.reserve(orig.size());
    for (int old : orig) out.node_ids.push_back(ids[old]);
  } else {
    out.graph = std::move(g);
    out.node_ids = std::move(ids);
  }
  return out;
}

IngestResult ingest_edge_list(const std::filesystem::path& path, IngestOptions opts) {
  return ingest_edge_list_text(read_text_file(path), opts);
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::string body = "# nodes " + std::to_string(g.node_count()) + " edges " +
                     std::to_string(g.edge_count()) + "\n";
  for (const auto& [u, v] : g.edges())
    body += std::to_string(u) + " " + std::to_string(v) + "\n";
  write_text_file(path, body);
}

}  // namespace nblab
