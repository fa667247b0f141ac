#include "nblab/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

namespace nblab {

Graph::Graph(int node_count, std::vector<Edge> edges,
             std::vector<std::uint8_t> labels, std::vector<MotifRole> roles)
    : labels_(std::move(labels)), roles_(std::move(roles)) {
  if (node_count < 0) throw std::invalid_argument("node_count must be >= 0");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != node_count)
    throw std::invalid_argument("labels size mismatch");
  if (!roles_.empty() && static_cast<int>(roles_.size()) != node_count)
    throw std::invalid_argument("roles size mismatch");
  adj_.assign(node_count, {});
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= node_count || v >= node_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop in edge set");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nbrs : adj_) {
    std::sort(nbrs.begin(), nbrs.end());
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
      throw std::invalid_argument("duplicate edge in edge set");
  }
  edge_count_ = static_cast<std::int64_t>(edges.size());
}

int Graph::min_degree() const {
  int d = node_count() == 0 ? 0 : degree(0);
  for (int v = 1; v < node_count(); ++v) d = std::min(d, degree(v));
  return d;
}

bool Graph::has_edge(int u, int v) const {
  const auto& nbrs = adj_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (int u = 0; u < node_count(); ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph simplify(std::span<const Edge> edges, int n) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  std::vector<Edge> clean;
  clean.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("edge endpoint out of range: (" +
                                  std::to_string(a) + ", " + std::to_string(b) + ")");
    if (a == b) continue;
    clean.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(clean.begin(), clean.end());
  clean.erase(std::unique(clean.begin(), clean.end()), clean.end());
  return Graph(n, std::move(clean));
}

std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> deg(g.node_count());
  for (int v = 0; v < g.node_count(); ++v) deg[v] = g.degree(v);
  return deg;
}

std::int64_t triangle_count(const Graph& g) {
  std::int64_t count = 0;
  for (int u = 0; u < g.node_count(); ++u) {
    const auto nu = g.neighbors(u);
    for (int v : nu) {
      if (v <= u) continue;
      const auto nv = g.neighbors(v);
      // common neighbors w with w > v; both lists sorted
      auto it = std::lower_bound(nu.begin(), nu.end(), v + 1);
      auto jt = std::lower_bound(nv.begin(), nv.end(), v + 1);
      while (it != nu.end() && jt != nv.end()) {
        if (*it < *jt) ++it;
        else if (*jt < *it) ++jt;
        else { ++count; ++it; ++jt; }
      }
    }
  }
  return count;
}

namespace {

std::vector<int> bfs_component(const Graph& g, int start, std::vector<int>& comp_id, int id) {
  std::vector<int> members;
  std::queue<int> q;
  q.push(start);
  comp_id[start] = id;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    members.push_back(u);
    for (int v : g.neighbors(u)) {
      if (comp_id[v] < 0) {
        comp_id[v] = id;
        q.push(v);
      }
    }
  }
  return members;
}

}  // namespace

bool is_connected(const Graph& g) {
  if (g.node_count() < 1) throw std::invalid_argument("is_connected requires node_count >= 1");
  std::vector<int> comp_id(g.node_count(), -1);
  return static_cast<int>(bfs_component(g, 0, comp_id, 0).size()) == g.node_count();
}

ComponentExtract largest_component(const Graph& g) {
  if (g.node_count() < 1) throw std::invalid_argument("largest_component requires node_count >= 1");
  std::vector<int> comp_id(g.node_count(), -1);
  std::vector<int> best;
  for (int v = 0; v < g.node_count(); ++v) {
    if (comp_id[v] >= 0) continue;
    auto members = bfs_component(g, v, comp_id, v);
    if (members.size() > best.size()) best = std::move(members);
  }
  std::sort(best.begin(), best.end());
  std::vector<int> old_to_new(g.node_count(), -1);
  for (std::size_t i = 0; i < best.size(); ++i) old_to_new[best[i]] = static_cast<int>(i);

  std::vector<Edge> edges;
  for (int u : best)
    for (int v : g.neighbors(u))
      if (u < v && old_to_new[v] >= 0) edges.emplace_back(old_to_new[u], old_to_new[v]);

  std::vector<std::uint8_t> labels;
  if (g.has_labels()) {
    labels.resize(best.size());
    for (std::size_t i = 0; i < best.size(); ++i) labels[i] = static_cast<std::uint8_t>(g.label(best[i]));
  }
  std::vector<MotifRole> roles;
  if (g.has_roles()) {
    roles.resize(best.size());
    for (std::size_t i = 0; i < best.size(); ++i) roles[i] = g.role(best[i]);
  }
  return {Graph(static_cast<int>(best.size()), std::move(edges), std::move(labels), std::move(roles)),
          std::move(best)};
}

}  // namespace nblab
