#ifndef NBLAB_OPERATORS_HPP
#define NBLAB_OPERATORS_HPP

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>

#include "nblab/graph.hpp"

namespace nblab {

// Matrix-free linear operator. apply() is linear by contract; operators are
// immutable and cheap to copy (they share the underlying graph).
class MatrixOperator {
 public:
  using ApplyFn = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

  MatrixOperator() = default;
  MatrixOperator(int dim, bool symmetric, std::string name, ApplyFn apply)
      : dim_(dim), symmetric_(symmetric), name_(std::move(name)), apply_(std::move(apply)) {}

  int dim() const { return dim_; }
  bool symmetric() const { return symmetric_; }
  const std::string& name() const { return name_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  // Real operator applied to a complex vector (componentwise on re/im).
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;

  // Materializes the operator column by column. Intended for dims small
  // enough for dense work.
  Eigen::MatrixXd to_dense() const;

 private:
  int dim_ = 0;
  bool symmetric_ = true;
  std::string name_;
  ApplyFn apply_;
};

// Adjacency matrix A.
MatrixOperator op_adjacency(const Graph& g);

// Unnormalized Laplacian L = D - A.
MatrixOperator op_laplacian(const Graph& g);

// Normalized Laplacian D^{-1/2} (D - A) D^{-1/2}. Requires min degree >= 1.
MatrixOperator op_norm_laplacian(const Graph& g);

// Modularity matrix (A - k k^T / K) / K applied matrix-free; the rank-one
// correction is never materialized. Requires at least one edge.
MatrixOperator op_modularity(const Graph& g);

// Non-backtracking matrix, the 2N x 2N block form
//   [ 0   D-I ]
//   [ -I   A  ]
// acting on stacked (x, y). Requires min degree >= 1.
MatrixOperator op_nonbacktracking(const Graph& g);

}  // namespace nblab

#endif  // NBLAB_OPERATORS_HPP
