#include "nblab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace nblab {

int motif_size(const MotifSpec& spec) {
  if (const auto* c = std::get_if<Clique>(&spec)) return c->n;
  return std::get<RegularMotif>(spec).size;
}

int motif_inner_degree(const MotifSpec& spec) {
  if (const auto* c = std::get_if<Clique>(&spec)) return c->n - 1;
  return std::get<RegularMotif>(spec).inner_degree;
}

namespace {

void validate_motif(const MotifSpec& spec) {
  if (const auto* c = std::get_if<Clique>(&spec)) {
    if (c->n < 3) throw std::invalid_argument("Clique requires n >= 3");
    return;
  }
  const auto& r = std::get<RegularMotif>(spec);
  if (r.size < 3) throw std::invalid_argument("RegularMotif requires size >= 3");
  if (r.inner_degree < 2) throw std::invalid_argument("RegularMotif requires inner_degree >= 2");
  if (r.inner_degree >= r.size) throw std::invalid_argument("RegularMotif requires inner_degree < size");
  if ((static_cast<std::int64_t>(r.size) * r.inner_degree) % 2 != 0)
    throw std::invalid_argument("RegularMotif requires size * inner_degree even");
}

// Appends the linked pairs of a Bernoulli(p) sweep over an implicit linear
// ordering of candidate pairs. decode(t) maps a linear index to a pair.
template <class Decode>
void bernoulli_pairs(std::int64_t total, double p, Rng& rng, Decode decode,
                     std::vector<Edge>& out) {
  std::int64_t pos = -1;
  while (true) {
    const std::int64_t gap = rng.next_geometric_gap(p);
    if (gap > total - 1 - pos) break;
    pos += gap;
    out.push_back(decode(pos));
  }
}

}  // namespace

Graph sbm_sample(const SbmParams& p, Rng& rng) {
  if (p.n < 0 || p.n % 2 != 0) throw std::invalid_argument("SbmParams: n must be even and >= 0");
  if (p.c_in < 0 || p.c_out < 0) throw std::invalid_argument("SbmParams: rates must be >= 0");
  if (p.c_out > p.c_in) throw std::invalid_argument("SbmParams: c_out must be <= c_in");
  if (p.c_in > p.n || p.c_out > p.n)
    throw std::invalid_argument("SbmParams: c_in and c_out must not exceed n");

  const int half = p.n / 2;
  const double p_in = p.n > 0 ? p.c_in / p.n : 0.0;
  const double p_out = p.n > 0 ? p.c_out / p.n : 0.0;

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(p.n * p.mean_degree() / 2 * 1.2) + 16);

  // Within-block pairs, enumerated row by row in the upper triangle. The
  // skip positions arrive in increasing order, so a forward row walk decodes
  // each linear index in amortized O(1).
  auto sweep_block = [&](int offset) {
    const std::int64_t total = static_cast<std::int64_t>(half) * (half - 1) / 2;
    std::int64_t row = 0, row_start = 0, row_len = half - 1;
    bernoulli_pairs(total, p_in, rng,
                    [&](std::int64_t t) {
                      while (t >= row_start + row_len) {
                        row_start += row_len;
                        ++row;
                        row_len = half - 1 - row;
                      }
                      const std::int64_t col = row + 1 + (t - row_start);
                      return Edge{offset + static_cast<int>(row), offset + static_cast<int>(col)};
                    },
                    edges);
  };
  sweep_block(0);
  sweep_block(half);

  {  // cross-block pairs on the half x half grid
    const std::int64_t total = static_cast<std::int64_t>(half) * half;
    bernoulli_pairs(total, p_out, rng,
                    [&](std::int64_t t) {
                      return Edge{static_cast<int>(t / half), half + static_cast<int>(t % half)};
                    },
                    edges);
  }

  std::vector<std::uint8_t> labels(p.n);
  for (int v = 0; v < p.n; ++v) labels[v] = v < half ? 1 : 2;
  return Graph(p.n, std::move(edges), std::move(labels));
}

namespace {

constexpr int kPairingRestartCap = 20000;

// Pairs up the given stub list as consecutive entries; returns false on a
// self-loop or duplicate edge.
bool stubs_to_edges(const std::vector<int>& stubs, std::vector<Edge>& edges) {
  edges.clear();
  edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    int u = stubs[i], v = stubs[i + 1];
    if (u == v) return false;
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges.begin(), edges.end());
  return std::adjacent_find(edges.begin(), edges.end()) == edges.end();
}

}  // namespace

namespace {

// Degree-preserving repair of a stub pairing: self-loops and duplicate links
// are swapped against random partner edges until the multigraph is simple.
// Returns false when the swap budget runs out (caller restarts).
bool repair_pairing(std::vector<Edge>& edges, Rng& rng) {
  std::map<Edge, int> count;
  auto norm = [](int a, int b) { return Edge{std::min(a, b), std::max(a, b)}; };
  for (const auto& [u, v] : edges) ++count[norm(u, v)];
  auto is_bad = [&](const Edge& e) {
    return e.first == e.second || count[norm(e.first, e.second)] > 1;
  };

  std::int64_t budget = 200 + 50 * static_cast<std::int64_t>(edges.size());
  while (budget-- > 0) {
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (is_bad(edges[i])) bad.push_back(i);
    if (bad.empty()) return true;

    const std::size_t i = bad[rng.next_index(bad.size())];
    const std::size_t j = rng.next_index(edges.size());
    if (i == j) continue;
    auto [u, v] = edges[i];
    auto [x, y] = edges[j];
    if (rng.next_bool()) std::swap(x, y);
    if (u == x || v == y) continue;
    if (count[norm(u, x)] > 0 || count[norm(v, y)] > 0) continue;
    --count[norm(u, v)];
    --count[norm(x, y)];
    ++count[norm(u, x)];
    ++count[norm(v, y)];
    edges[i] = {u, x};
    edges[j] = {v, y};
  }
  return false;
}

}  // namespace

Graph regular_graph(int n, int d, Rng& rng) {
  if (n <= 0 || d < 0) throw std::invalid_argument("regular_graph: need n > 0, d >= 0");
  if (d >= n) throw std::invalid_argument("regular_graph: d must be < n");
  if ((static_cast<std::int64_t>(n) * d) % 2 != 0)
    throw std::invalid_argument("regular_graph: n * d must be even");

  std::vector<int> stubs(static_cast<std::size_t>(n) * d);
  for (int v = 0; v < n; ++v)
    std::fill(stubs.begin() + static_cast<std::size_t>(v) * d,
              stubs.begin() + static_cast<std::size_t>(v + 1) * d, v);

  std::vector<Edge> edges;
  for (int attempt = 0; attempt < kPairingRestartCap; ++attempt) {
    rng.shuffle(stubs);
    edges.clear();
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
      edges.emplace_back(stubs[i], stubs[i + 1]);
    if (!repair_pairing(edges, rng)) continue;
    for (auto& [u, v] : edges)
      if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    return Graph(n, std::move(edges));
  }
  throw std::runtime_error("regular_graph: stub pairing restart cap exhausted");
}

Graph regular_sbm(int n, int c0, double c_in, double c_out, Rng& rng) {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("regular_sbm: n must be even and > 0");
  if (c0 < 0 || c0 >= n / 2) throw std::invalid_argument("regular_sbm: need 0 <= c0 < n/2");
  if (c_out < 0 || c_out > c_in) throw std::invalid_argument("regular_sbm: need 0 <= c_out <= c_in");
  if (std::abs(c_in + c_out - 2.0 * c0) > 1e-9)
    throw std::invalid_argument("regular_sbm: c_in + c_out must equal 2*c0");

  const int half = n / 2;
  const std::int64_t block_stubs = static_cast<std::int64_t>(half) * c0;
  if (c_out == 0.0 && (block_stubs & 1))
    throw std::invalid_argument("regular_sbm: infeasible stub counts (odd block stubs, no cross edges)");

  std::vector<int> stubs1(block_stubs), stubs2(block_stubs);
  std::vector<Edge> edges, block_edges;
  for (int attempt = 0; attempt < kPairingRestartCap; ++attempt) {
    // Cross-edge count: Binomial over the half*half cross pairs, adjusted to
    // the parity the within-block stub counts require.
    std::int64_t m_cross = rng.next_binomial(static_cast<std::int64_t>(half) * half, c_out / n);
    if ((m_cross & 1) != (block_stubs & 1)) m_cross += m_cross > 0 && m_cross >= block_stubs ? -1 : 1;
    m_cross = std::min(m_cross, block_stubs);

    for (int v = 0; v < half; ++v) {
      std::fill(stubs1.begin() + static_cast<std::size_t>(v) * c0,
                stubs1.begin() + static_cast<std::size_t>(v + 1) * c0, v);
      std::fill(stubs2.begin() + static_cast<std::size_t>(v) * c0,
                stubs2.begin() + static_cast<std::size_t>(v + 1) * c0, half + v);
    }
    rng.shuffle(stubs1);
    rng.shuffle(stubs2);

    edges.clear();
    for (std::int64_t i = 0; i < m_cross; ++i) edges.emplace_back(stubs1[i], stubs2[i]);

    bool ok = true;
    for (const auto* stubs : {&stubs1, &stubs2}) {
      std::vector<int> rest(stubs->begin() + m_cross, stubs->end());
      if (!stubs_to_edges(rest, block_edges)) {
        ok = false;
        break;
      }
      edges.insert(edges.end(), block_edges.begin(), block_edges.end());
    }
    if (!ok) continue;

    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    bool simple = true;
    for (const auto& [u, v] : edges)
      if (u == v) { simple = false; break; }
    if (!simple) continue;

    std::vector<std::uint8_t> labels(n);
    for (int v = 0; v < n; ++v) labels[v] = v < half ? 1 : 2;
    return Graph(n, std::move(edges), std::move(labels));
  }
  throw std::runtime_error("regular_sbm: stub pairing restart cap exhausted");
}

Graph attach_motif_pair(const Graph& g, const MotifSpec& spec, Rng& rng) {
  validate_motif(spec);
  if (!is_connected(g)) throw std::invalid_argument("attach_motif_pair: base graph must be connected");
  const int m = motif_size(spec);

  // Untagged nodes are eligible boundary attachment points, so repeated
  // applications pick disjoint boundaries away from earlier motifs.
  std::vector<int> candidates;
  for (int v = 0; v < g.node_count(); ++v)
    if (g.role(v) == MotifRole::Base) candidates.push_back(v);
  if (static_cast<int>(candidates.size()) < m)
    throw std::invalid_argument("attach_motif_pair: not enough base nodes for boundary");

  std::vector<Edge> motif_edges;
  if (const auto* c = std::get_if<Clique>(&spec)) {
    for (int i = 0; i < c->n; ++i)
      for (int j = i + 1; j < c->n; ++j) motif_edges.emplace_back(i, j);
  } else {
    const auto& r = std::get<RegularMotif>(spec);
    motif_edges = regular_graph(r.size, r.inner_degree, rng).edges();
  }

  // Partial Fisher-Yates draw of m distinct boundary nodes.
  std::vector<int> boundary(m);
  for (int i = 0; i < m; ++i) {
    const std::size_t j = i + rng.next_index(candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
    boundary[i] = candidates[i];
  }

  const int n0 = g.node_count();
  std::vector<Edge> edges = g.edges();
  edges.reserve(edges.size() + 2 * motif_edges.size() + 2 * static_cast<std::size_t>(m));
  for (const auto& [u, v] : motif_edges) {
    edges.emplace_back(n0 + u, n0 + v);          // Omega
    edges.emplace_back(n0 + m + u, n0 + m + v);  // copy
  }
  for (int i = 0; i < m; ++i) {
    edges.emplace_back(boundary[i], n0 + i);
    edges.emplace_back(boundary[i], n0 + m + i);
  }

  std::vector<std::uint8_t> labels;
  if (g.has_labels()) {
    labels.assign(g.labels().begin(), g.labels().end());
    labels.resize(n0 + 2 * m, 0);
  }
  std::vector<MotifRole> roles(n0 + 2 * m, MotifRole::Base);
  if (g.has_roles()) std::copy(g.roles().begin(), g.roles().end(), roles.begin());
  for (int b : boundary) roles[b] = MotifRole::Boundary;
  for (int i = 0; i < m; ++i) {
    roles[n0 + i] = MotifRole::Omega;
    roles[n0 + m + i] = MotifRole::OmegaTilde;
  }
  return Graph(n0 + 2 * m, std::move(edges), std::move(labels), std::move(roles));
}

namespace {

// Mutable adjacency for the rewiring loop; sorted neighbor vectors.
struct MutableAdj {
  std::vector<std::vector<int>> adj;

  explicit MutableAdj(const Graph& g) {
    adj.resize(g.node_count());
    for (int v = 0; v < g.node_count(); ++v)
      adj[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
  }

  bool has(int u, int v) const {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
  }
  void add(int u, int v) {
    adj[u].insert(std::lower_bound(adj[u].begin(), adj[u].end(), v), v);
    adj[v].insert(std::lower_bound(adj[v].begin(), adj[v].end(), u), u);
  }
  void remove(int u, int v) {
    adj[u].erase(std::lower_bound(adj[u].begin(), adj[u].end(), v));
    adj[v].erase(std::lower_bound(adj[v].begin(), adj[v].end(), u));
  }
  // |N(u) & N(v)| excluding skip1/skip2.
  std::int64_t common(int u, int v, int skip1 = -1, int skip2 = -1) const {
    const auto &a = adj[u], &b = adj[v];
    std::int64_t count = 0;
    auto it = a.begin();
    auto jt = b.begin();
    while (it != a.end() && jt != b.end()) {
      if (*it < *jt) ++it;
      else if (*jt < *it) ++jt;
      else {
        if (*it != skip1 && *it != skip2) ++count;
        ++it;
        ++jt;
      }
    }
    return count;
  }
  bool connected() const {
    std::vector<int> stack{0};
    std::vector<char> seen(adj.size(), 0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          ++reached;
          stack.push_back(v);
        }
    }
    return reached == adj.size();
  }
};

}  // namespace

RewireResult rewire_increase_triangles(const Graph& g, std::int64_t delta_target,
                                       Rng& rng, std::int64_t max_attempts) {
  if (g.node_count() < 1 || !is_connected(g))
    throw std::invalid_argument("rewire_increase_triangles: input must be connected");
  if (g.edge_count() < 2)
    throw std::invalid_argument("rewire_increase_triangles: need at least 2 edges");
  if (delta_target <= 0) return {g, 0, 0};
  if (max_attempts <= 0) max_attempts = 100 * g.edge_count();

  MutableAdj state(g);
  std::vector<Edge> edge_list = g.edges();
  std::int64_t achieved = 0;
  std::int64_t attempts = 0;

  while (achieved < delta_target && attempts < max_attempts) {
    ++attempts;
    const std::size_t i = rng.next_index(edge_list.size());
    const std::size_t j = rng.next_index(edge_list.size());
    auto [a, b] = edge_list[i];
    auto [c, d] = edge_list[j];
    if (rng.next_bool()) std::swap(c, d);
    // Proposal: drop (a,b) and (c,d), add (a,c) and (b,d).
    if (a == c || a == d || b == c || b == d) continue;
    if (state.has(a, c) || state.has(b, d)) continue;

    const std::int64_t gained =
        state.common(a, c, b, d) + state.common(b, d, a, c);
    if (gained == 0) continue;
    const std::int64_t lost = state.common(a, b) + state.common(c, d);
    const std::int64_t delta = gained - lost;
    if (delta <= 0) continue;

    state.remove(a, b);
    state.remove(c, d);
    state.add(a, c);
    state.add(b, d);
    if (!state.connected()) {
      state.remove(a, c);
      state.remove(b, d);
      state.add(a, b);
      state.add(c, d);
      continue;
    }
    edge_list[i] = {std::min(a, c), std::max(a, c)};
    edge_list[j] = {std::min(b, d), std::max(b, d)};
    achieved += delta;
  }

  std::sort(edge_list.begin(), edge_list.end());
  Graph out(g.node_count(), std::move(edge_list),
            std::vector<std::uint8_t>(g.labels()), std::vector<MotifRole>(g.roles()));
  return {std::move(out), achieved, attempts};
}

}  // namespace nblab
