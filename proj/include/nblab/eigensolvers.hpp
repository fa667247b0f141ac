#ifndef NBLAB_EIGENSOLVERS_HPP
#define NBLAB_EIGENSOLVERS_HPP

#include <complex>
#include <stdexcept>
#include <vector>

#include "nblab/operators.hpp"

namespace nblab {

struct EigenPair {
  std::complex<double> value;
  Eigen::VectorXcd vector;  // unit 2-norm
  double residual = 0.0;    // ||op v - mu v|| / ||v||, measured on return
};

enum class Which { LargestReal, LargestMagnitude, Smallest };

struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& msg, double best)
      : std::runtime_error(msg), best_residual(best) {}
  double best_residual;
};

struct SolverOptions {
  double tol = 0.0;          // 0 selects the default: 1e-10 symmetric, 1e-8 otherwise
  int max_basis = 0;         // 0 selects min(dim, max(4k, 240))
  int max_restarts = 300;    // explicit restart cycles after the basis cap
  std::uint64_t start_seed = 0x6e626c6162ULL;  // deterministic start vector
};

// All eigenpairs via a dense solve (oracle for the iterative paths).
// Symmetric operators are returned with ascending real eigenvalues,
// nonsymmetric ones sorted by descending real part. Throws on dim > cap.
std::vector<EigenPair> dense_eig(const MatrixOperator& op, int cap = 3000);

// k extremal eigenpairs. Symmetric operators run Lanczos with full
// reorthogonalization; nonsymmetric ones an Arnoldi iteration with explicit
// restarts. Throws ConvergenceError (carrying the best residual seen) when
// the iteration caps are exhausted.
std::vector<EigenPair> topk_eigs(const MatrixOperator& op, int k, Which which,
                                 SolverOptions opts = {});

// Keeps pairs with |Im mu| <= imag_tol * max(1, |mu|), sorted by descending
// real part. May return fewer pairs than given.
std::vector<EigenPair> real_filter(std::vector<EigenPair> pairs, double imag_tol = 1e-8);

// Second block (entries N..2N-1) of a non-backtracking eigenvector,
// normalized to unit 2-norm. Throws on a (near-)zero second block.
Eigen::VectorXcd nb_node_part(const EigenPair& pair);

// Up to k largest-real eigenpairs of a nonsymmetric operator: computes
// k' = max(2k, 20) pairs by largest magnitude, real-filters, and escalates
// k' (x2, capped at 200) until k real pairs are found or the cap is hit.
std::vector<EigenPair> top_real_eigs(const MatrixOperator& op, int k,
                                     SolverOptions opts = {});

}  // namespace nblab

#endif  // NBLAB_EIGENSOLVERS_HPP
