#include "nblab/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "nblab/operators.hpp"

namespace nblab {

double ipr(const Eigen::VectorXcd& v) {
  double sum2 = 0.0, sum4 = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a2 = std::norm(v[i]);
    sum2 += a2;
    sum4 += a2 * a2;
  }
  if (sum2 == 0.0) throw std::invalid_argument("ipr: zero vector");
  return sum4 / (sum2 * sum2);
}

double ipr(const Eigen::VectorXd& v) {
  double sum2 = 0.0, sum4 = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a2 = v[i] * v[i];
    sum2 += a2;
    sum4 += a2 * a2;
  }
  if (sum2 == 0.0) throw std::invalid_argument("ipr: zero vector");
  return sum4 / (sum2 * sum2);
}

Partition sign_partition(const Eigen::VectorXd& v) {
  Partition p;
  p.assignment.resize(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) p.assignment[i] = v[i] < 0.0 ? 2 : 1;
  return p;
}

Partition sign_partition(const Eigen::VectorXcd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i].imag() != 0.0)
      throw std::invalid_argument("sign_partition: complex input rejected");
  return sign_partition(Eigen::VectorXd(v.real()));
}

Eigen::VectorXd to_real_checked(const Eigen::VectorXcd& v, double tol) {
  const double scale = v.norm();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v[i].imag()) > tol * std::max(1.0, scale))
      throw std::invalid_argument("to_real_checked: vector has significant imaginary part");
  return v.real();
}

Eigen::VectorXd phase_aligned_real(const Eigen::VectorXcd& v) {
  std::complex<double> z = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) z += v[i] * v[i];
  const double theta = 0.5 * std::arg(z);
  const std::complex<double> rot(std::cos(-theta), std::sin(-theta));
  return (v * rot).real();
}

double overlap(const Partition& p, const Graph& g) {
  if (static_cast<int>(p.assignment.size()) != g.node_count())
    throw std::invalid_argument("overlap: partition size mismatch");
  std::int64_t labeled = 0, agree = 0;
  for (int v = 0; v < g.node_count(); ++v) {
    const int lab = g.label(v);
    if (lab == 0) continue;
    ++labeled;
    if (p.assignment[v] == lab) ++agree;
  }
  if (labeled == 0) throw std::invalid_argument("overlap: graph has no labeled nodes");
  return static_cast<double>(std::max(agree, labeled - agree)) / static_cast<double>(labeled);
}

namespace {

// Larger root of mu^2 - lambda mu + q = 0 with lambda = q = c - 1.
MuPrediction motif_mu(int c) {
  MuPrediction out;
  const double lam = c - 1.0;
  const double disc = lam * (lam - 4.0);  // (c-1)(c-5)
  if (disc >= 0.0) {
    out.is_real = true;
    out.mu = 0.5 * (lam + std::sqrt(disc));
    out.root = out.mu;
  } else {
    out.is_real = false;
    out.mu = 0.0;
    out.root = {0.5 * lam, 0.5 * std::sqrt(-disc)};
  }
  return out;
}

}  // namespace

MuPrediction predicted_mu_clique(int n) {
  if (n < 3) throw std::invalid_argument("predicted_mu_clique: n must be >= 3");
  return motif_mu(n);
}

MuPrediction predicted_mu_regular(int c) {
  if (c < 3) throw std::invalid_argument("predicted_mu_regular: c must be >= 3");
  return motif_mu(c);
}

SpectralMarkers spectral_markers(double c_bar) {
  if (c_bar <= 0.0) throw std::invalid_argument("spectral_markers: c_bar must be > 0");
  const double edge = std::sqrt(c_bar);
  return {edge, 2.0 * edge};
}

LocalizedVector build_localized_vector(const Graph& g) {
  if (!g.has_roles()) throw std::invalid_argument("build_localized_vector: graph has no motif roles");
  std::vector<int> omega, omega_tilde;
  for (int v = 0; v < g.node_count(); ++v) {
    if (g.role(v) == MotifRole::Omega) omega.push_back(v);
    else if (g.role(v) == MotifRole::OmegaTilde) omega_tilde.push_back(v);
  }
  if (omega.empty() || omega.size() != omega_tilde.size())
    throw std::invalid_argument("build_localized_vector: missing or unbalanced motif pair");

  // The motif must be regular inside the pair with exactly one boundary link
  // per node, so that the constant vector solves the subgraph eigenvalue
  // equation with lambda = c - 1.
  std::vector<char> in_pair(g.node_count(), 0);
  for (int v : omega) in_pair[v] = 1;
  for (int v : omega_tilde) in_pair[v] = 1;
  int c = -1;
  for (const auto& side : {omega, omega_tilde}) {
    for (int v : side) {
      int inner = 0, outer = 0;
      for (int u : g.neighbors(v)) (in_pair[u] ? inner : outer)++;
      if (outer != 1)
        throw std::invalid_argument("build_localized_vector: motif node without a single boundary link");
      if (c < 0) c = inner + 1;
      else if (inner + 1 != c)
        throw std::invalid_argument("build_localized_vector: motif is not regular");
    }
  }

  const int n = g.node_count();
  const int m = static_cast<int>(omega.size());
  const MuPrediction pred = motif_mu(c);
  const std::complex<double> mu = pred.root;

  Eigen::VectorXd node = Eigen::VectorXd::Zero(n);
  const double amp = 1.0 / std::sqrt(2.0 * m);
  for (int v : omega) node[v] = amp;
  for (int v : omega_tilde) node[v] = -amp;

  // Lift to the 2N block form: top block (D - I) v / mu, bottom block v.
  Eigen::VectorXcd full(2 * n);
  for (int v = 0; v < n; ++v) {
    full[v] = (g.degree(v) - 1.0) * node[v] / mu;
    full[n + v] = node[v];
  }
  full /= full.norm();

  const MatrixOperator b = op_nonbacktracking(g);
  EigenPair pair;
  pair.value = mu;
  pair.vector = std::move(full);
  pair.residual = (b.apply(pair.vector) - mu * pair.vector).norm();

  return {pred.is_real, mu, std::move(pair), std::move(node), m, c};
}

}  // namespace nblab
