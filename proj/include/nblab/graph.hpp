#ifndef NBLAB_GRAPH_HPP
#define NBLAB_GRAPH_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace nblab {

enum class MotifRole : std::uint8_t { Base = 0, Omega, OmegaTilde, Boundary };

using Edge = std::pair<int, int>;

// Simple undirected graph. Nodes are 0-based contiguous integers, adjacency
// lists are sorted, no self-loops, no duplicate edges. Immutable after
// construction; safe to share read-only across workers.
//
// labels: optional per-node planted block id (1 or 2), 0 = unlabeled.
// roles:  optional per-node motif tag, Base when untagged.
class Graph {
 public:
  Graph() = default;

  // Builds from an already clean edge set (validated: in-range, no self
  // loops, no duplicates after normalization).
  Graph(int node_count, std::vector<Edge> edges,
        std::vector<std::uint8_t> labels = {}, std::vector<MotifRole> roles = {});

  int node_count() const { return static_cast<int>(adj_.size()); }
  std::int64_t edge_count() const { return edge_count_; }

  std::span<const int> neighbors(int v) const {
    return {adj_[v].data(), adj_[v].size()};
  }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  int min_degree() const;
  bool has_edge(int u, int v) const;

  // Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

  bool has_labels() const { return !labels_.empty(); }
  int label(int v) const { return labels_.empty() ? 0 : labels_[v]; }
  const std::vector<std::uint8_t>& labels() const { return labels_; }

  bool has_roles() const { return !roles_.empty(); }
  MotifRole role(int v) const { return roles_.empty() ? MotifRole::Base : roles_[v]; }
  const std::vector<MotifRole>& roles() const { return roles_; }

  bool operator==(const Graph& other) const {
    return adj_ == other.adj_ && labels_ == other.labels_ && roles_ == other.roles_;
  }

 private:
  std::vector<std::vector<int>> adj_;
  std::int64_t edge_count_ = 0;
  std::vector<std::uint8_t> labels_;
  std::vector<MotifRole> roles_;
};

// Cleans a raw edge list: direction ignored, self-loops dropped, multiple
// links collapsed to one. Throws std::invalid_argument on out-of-range
// endpoints or negative n.
Graph simplify(std::span<const Edge> edges, int n);

std::vector<int> degree_sequence(const Graph& g);

// Number of unordered node triples with all three edges present.
std::int64_t triangle_count(const Graph& g);

// True iff a traversal from node 0 reaches all nodes. Requires node_count >= 1.
bool is_connected(const Graph& g);

struct ComponentExtract {
  Graph graph;
  std::vector<int> orig_index;  // orig_index[new] = old node id
};

// Induced subgraph on the largest connected node set (ties broken toward the
// component containing the smallest node id). Labels and roles carry over.
ComponentExtract largest_component(const Graph& g);

}  // namespace nblab

#endif  // NBLAB_GRAPH_HPP
