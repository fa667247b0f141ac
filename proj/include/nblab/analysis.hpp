#ifndef NBLAB_ANALYSIS_HPP
#define NBLAB_ANALYSIS_HPP

#include <complex>

#include "nblab/eigensolvers.hpp"
#include "nblab/graph.hpp"

namespace nblab {

struct Partition {
  std::vector<int> assignment;  // module id per node, 1 or 2
};

// Inverse participation ratio sum |v_i|^4 / (sum |v_i|^2)^2. Scale
// invariant, in [1/dim, 1]. Throws on the zero vector.
double ipr(const Eigen::VectorXcd& v);
double ipr(const Eigen::VectorXd& v);

// Sign bisection: v_i > 0 -> module 1, v_i < 0 -> module 2, v_i == 0 ->
// module 1 (deterministic tie-break).
Partition sign_partition(const Eigen::VectorXd& v);
// Complex inputs are rejected (type error).
Partition sign_partition(const Eigen::VectorXcd& v);

// Real part of v after checking |Im v_i| <= tol * ||v||.
Eigen::VectorXd to_real_checked(const Eigen::VectorXcd& v, double tol = 1e-8);

// Removes the arbitrary global phase of an eigenvector (rotates so the real
// part carries the most energy) and returns the real part. Recovers a real
// vector exactly, up to overall sign.
Eigen::VectorXd phase_aligned_real(const Eigen::VectorXcd& v);

// Fraction of correctly classified labeled nodes, maximized over the two
// block permutations. Unlabeled nodes (e.g. motif nodes) are excluded.
double overlap(const Partition& p, const Graph& g);

struct MuPrediction {
  bool is_real;              // true when the larger root of the quadratic is real
  double mu;                 // the larger real root (valid when is_real)
  std::complex<double> root; // the principal root, complex when !is_real
};

// Larger root of mu^2 - (n-1) mu + (n-1) = 0 for a clique motif of n nodes;
// flagged complex for n < 5.
MuPrediction predicted_mu_clique(int n);

// Larger root of mu^2 - (c-1) mu + (c-1) = 0 for a regular motif whose nodes
// have full degree c; flagged complex for c < 5.
MuPrediction predicted_mu_regular(int c);

struct SpectralMarkers {
  double band_edge;  // sqrt(mean degree)
  double threshold;  // 2 sqrt(mean degree), detectability threshold
};

SpectralMarkers spectral_markers(double c_bar);

struct LocalizedVector {
  bool mu_real;
  std::complex<double> mu;
  EigenPair pair;               // eigenpair of the 2N block operator
  Eigen::VectorXd node_vector;  // unit-norm node-space vector, +/- on the pair
  int motif_size;               // |Omega|
  int motif_degree;             // c, full degree of motif nodes
};

// Explicit localized eigenvector for a graph carrying a symmetric motif
// pair: +const on Omega, -const on the copy, zero elsewhere, lifted to the
// 2N block form as ((D-I)v/mu, v). Requires the tagged motif to be regular
// with exactly one boundary link per node. When c < 5 the eigenvalue is
// complex; the pair is still built but carries mu_real = false.
LocalizedVector build_localized_vector(const Graph& g);

}  // namespace nblab

#endif  // NBLAB_ANALYSIS_HPP
