#include "nblab/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace nblab {

Eigen::VectorXd MatrixOperator::apply(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw std::invalid_argument("MatrixOperator::apply: size mismatch");
  Eigen::VectorXd y(dim_);
  apply_(x, y);
  return y;
}

Eigen::VectorXcd MatrixOperator::apply(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd y(dim_);
  y.real() = apply(Eigen::VectorXd(x.real()));
  y.imag() = apply(Eigen::VectorXd(x.imag()));
  return y;
}

Eigen::MatrixXd MatrixOperator::to_dense() const {
  Eigen::MatrixXd m(dim_, dim_);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim_);
  Eigen::VectorXd col(dim_);
  for (int j = 0; j < dim_; ++j) {
    e[j] = 1.0;
    apply_(e, col);
    m.col(j) = col;
    e[j] = 0.0;
  }
  return m;
}

namespace {

using GraphPtr = std::shared_ptr<const Graph>;

void adjacency_apply(const Graph& g, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  for (int u = 0; u < g.node_count(); ++u) {
    double acc = 0.0;
    for (int v : g.neighbors(u)) acc += x[v];
    y[u] = acc;
  }
}

}  // namespace

MatrixOperator op_adjacency(const Graph& g) {
  auto gp = std::make_shared<const Graph>(g);
  return {gp->node_count(), true, "A",
          [gp](const Eigen::VectorXd& x, Eigen::VectorXd& y) { adjacency_apply(*gp, x, y); }};
}

MatrixOperator op_laplacian(const Graph& g) {
  auto gp = std::make_shared<const Graph>(g);
  return {gp->node_count(), true, "L",
          [gp](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
            adjacency_apply(*gp, x, y);
            for (int u = 0; u < gp->node_count(); ++u)
              y[u] = gp->degree(u) * x[u] - y[u];
          }};
}

MatrixOperator op_norm_laplacian(const Graph& g) {
  if (g.node_count() > 0 && g.min_degree() < 1)
    throw std::invalid_argument("op_norm_laplacian: graph has a degree-0 node");
  auto gp = std::make_shared<const Graph>(g);
  auto inv_sqrt = std::make_shared<Eigen::VectorXd>(g.node_count());
  for (int u = 0; u < g.node_count(); ++u)
    (*inv_sqrt)[u] = 1.0 / std::sqrt(static_cast<double>(g.degree(u)));
  return {gp->node_count(), true, "NL",
          [gp, inv_sqrt](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
            Eigen::VectorXd scaled = inv_sqrt->cwiseProduct(x);
            adjacency_apply(*gp, scaled, y);
            for (int u = 0; u < gp->node_count(); ++u)
              y[u] = x[u] - (*inv_sqrt)[u] * y[u];
          }};
}

MatrixOperator op_modularity(const Graph& g) {
  if (g.edge_count() < 1) throw std::invalid_argument("op_modularity: graph has no edges");
  auto gp = std::make_shared<const Graph>(g);
  auto deg = std::make_shared<Eigen::VectorXd>(g.node_count());
  for (int u = 0; u < g.node_count(); ++u) (*deg)[u] = g.degree(u);
  const double total = deg->sum();
  return {gp->node_count(), true, "M",
          [gp, deg, total](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
            adjacency_apply(*gp, x, y);
            const double proj = deg->dot(x) / total;
            y = (y - proj * (*deg)) / total;
          }};
}

MatrixOperator op_nonbacktracking(const Graph& g) {
  if (g.node_count() > 0 && g.min_degree() < 1)
    throw std::invalid_argument("op_nonbacktracking: graph has a degree-0 node");
  auto gp = std::make_shared<const Graph>(g);
  const int n = g.node_count();
  return {2 * n, false, "B",
          [gp, n](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
            // input (x0, x1): top block (D - I) x1, bottom block -x0 + A x1.
            for (int u = 0; u < n; ++u) y[u] = (gp->degree(u) - 1.0) * x[n + u];
            for (int u = 0; u < n; ++u) {
              double acc = 0.0;
              for (int v : gp->neighbors(u)) acc += x[n + v];
              y[n + u] = acc - x[u];
            }
          }};
}

}  // namespace nblab
