#ifndef NBLAB_GENERATORS_HPP
#define NBLAB_GENERATORS_HPP

#include <cstdint>
#include <variant>

#include "nblab/graph.hpp"
#include "nblab/rng.hpp"

namespace nblab {

struct Clique {
  int n;  // >= 3
};

struct RegularMotif {
  int size;          // >= 3
  int inner_degree;  // >= 2, < size; size * inner_degree must be even
};

using MotifSpec = std::variant<Clique, RegularMotif>;

int motif_size(const MotifSpec& spec);
int motif_inner_degree(const MotifSpec& spec);

struct SbmParams {
  int n;         // total node count, even; two equal blocks
  double c_in;   // expected within-block rate, p_in = c_in / n
  double c_out;  // expected cross-block rate, p_out = c_out / n

  double mean_degree() const { return 0.5 * (c_in + c_out); }
};

// Two-block planted-partition sample. Nodes 0..n/2-1 get label 1, the rest
// label 2. Within-block pairs are linked independently with probability
// c_in/n, cross-block with c_out/n.
Graph sbm_sample(const SbmParams& p, Rng& rng);
inline Graph sbm_sample(const SbmParams& p, std::uint64_t seed) {
  Rng rng(seed);
  return sbm_sample(p, rng);
}

// Random d-regular simple graph via stub pairing; self-loop and multi-edge
// collisions are repaired by degree-preserving swaps, with a full restart
// when the repair budget runs out. Throws std::invalid_argument when n*d is
// odd or d >= n, std::runtime_error when the restart cap is exhausted.
Graph regular_graph(int n, int d, Rng& rng);

// Random c0-regular graph with two planted blocks: every node has degree
// exactly c0, the cross-block edge count is drawn from Binomial(n^2/4,
// c_out/n) adjusted to stub parity. Requires c_in + c_out == 2*c0 and n even.
Graph regular_sbm(int n, int c0, double c_in, double c_out, Rng& rng);
inline Graph regular_sbm(int n, int c0, double c_in, double c_out, std::uint64_t seed) {
  Rng rng(seed);
  return regular_sbm(n, c0, c_in, c_out, rng);
}

// Attaches a symmetric motif pair: builds the induced subgraph Omega per
// spec, an identical copy, picks |Omega| distinct untagged base nodes as the
// boundary, and links each motif node and its copy to the same boundary node
// by a single link. Node count grows by 2|Omega|, edge count by
// 2|E(Omega)| + 2|Omega|.
Graph attach_motif_pair(const Graph& g, const MotifSpec& spec, Rng& rng);
inline Graph attach_motif_pair(const Graph& g, const MotifSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return attach_motif_pair(g, spec, rng);
}

struct RewireResult {
  Graph graph;
  std::int64_t achieved_delta;  // triangle_count(out) - triangle_count(in)
  std::int64_t attempts;
};

// Degree-preserving double-edge swaps accepted only when they keep the graph
// simple and connected and strictly increase the triangle count. Stops once
// the triangle gain reaches delta_target or max_attempts proposals have been
// made (max_attempts <= 0 selects the default 100 * |E|).
RewireResult rewire_increase_triangles(const Graph& g, std::int64_t delta_target,
                                       Rng& rng, std::int64_t max_attempts = 0);
inline RewireResult rewire_increase_triangles(const Graph& g, std::int64_t delta_target,
                                              std::uint64_t seed, std::int64_t max_attempts = 0) {
  Rng rng(seed);
  return rewire_increase_triangles(g, delta_target, rng, max_attempts);
}

}  // namespace nblab

#endif  // NBLAB_GENERATORS_HPP
