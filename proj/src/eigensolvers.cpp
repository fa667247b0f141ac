#include "nblab/eigensolvers.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "nblab/rng.hpp"

namespace nblab {

namespace {

Eigen::VectorXd random_unit_vector(int dim, Rng& rng) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.next_double() - 0.5;
  const double n = v.norm();
  if (n == 0.0) v[0] = 1.0;
  else v /= n;
  return v;
}

double true_residual(const MatrixOperator& op, const EigenPair& p) {
  const Eigen::VectorXcd r = op.apply(p.vector) - p.value * p.vector;
  return r.norm() / p.vector.norm();
}

bool value_less(Which which, std::complex<double> a, std::complex<double> b) {
  switch (which) {
    case Which::Smallest:
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    case Which::LargestReal:
      if (a.real() != b.real()) return a.real() > b.real();
      return a.imag() > b.imag();
    case Which::LargestMagnitude:
    default: {
      const double ma = std::abs(a), mb = std::abs(b);
      if (ma != mb) return ma > mb;
      if (a.real() != b.real()) return a.real() > b.real();
      return a.imag() > b.imag();
    }
  }
}

std::vector<int> select_wanted(Which which, const Eigen::VectorXcd& values, int k) {
  std::vector<int> idx(values.size());
  for (int i = 0; i < values.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return value_less(which, values[a], values[b]); });
  if (static_cast<int>(idx.size()) > k) idx.resize(k);
  return idx;
}

void sort_pairs(Which which, std::vector<EigenPair>& pairs) {
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](const EigenPair& a, const EigenPair& b) {
                     return value_less(which, a.value, b.value);
                   });
}

// Orthogonalizes w against basis[0..count); two passes of modified
// Gram-Schmidt. Coefficients accumulate into h when given.
void orthogonalize(const std::vector<Eigen::VectorXd>& basis, int count,
                   Eigen::VectorXd& w, double* h = nullptr) {
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < count; ++i) {
      const double c = basis[i].dot(w);
      w -= c * basis[i];
      if (h) h[i] += c;
    }
  }
}

// Shared scaffolding for one Krylov build. The symmetric path keeps the
// tridiagonal coefficients inside the Hessenberg storage as well, so both
// paths read the same structures.
struct CycleResult {
  std::vector<EigenPair> pairs;  // nonempty on success
  bool space_exhausted = false;
};

template <bool Symmetric>
CycleResult krylov_cycle(const MatrixOperator& op, int k, Which which, double tol,
                         int max_basis, Rng& rng, Eigen::VectorXd& start,
                         double& best_residual) {
  const int dim = op.dim();
  const int cap = std::min(max_basis, dim);
  std::vector<Eigen::VectorXd> basis;
  basis.reserve(cap + 1);
  basis.push_back(start);
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(cap + 1, cap);

  // Solves the projected problem on m columns; returns eigen decomposition.
  auto project = [&](int m, Eigen::VectorXcd& values, Eigen::MatrixXcd& vectors) {
    if constexpr (Symmetric) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess.topLeftCorner(m, m));
      values = es.eigenvalues().cast<std::complex<double>>();
      vectors = es.eigenvectors().cast<std::complex<double>>();
      return true;
    } else {
      Eigen::EigenSolver<Eigen::MatrixXd> es(hess.topLeftCorner(m, m));
      if (es.info() != Eigen::Success) return false;
      values = es.eigenvalues();
      vectors = es.eigenvectors();
      return true;
    }
  };

  int m = 0;
  bool space_exhausted = false;
  while (m < cap) {
    Eigen::VectorXd w = op.apply(basis[m]);
    orthogonalize(basis, m + 1, w, hess.col(m).data());
    if constexpr (Symmetric) {
      // keep the projected matrix exactly symmetric
      if (m > 0) hess(m - 1, m) = hess(m, m - 1);
    }
    const double b = w.norm();
    ++m;
    hess(m, m - 1) = b;
    if (m < cap) {
      if (b < 1e-12) {
        hess(m, m - 1) = 0.0;
        Eigen::VectorXd fresh = random_unit_vector(dim, rng);
        orthogonalize(basis, m, fresh);
        const double fn = fresh.norm();
        if (fn < 1e-8) {
          space_exhausted = true;
        } else {
          basis.push_back(fresh / fn);
        }
      } else {
        basis.push_back(w / b);
      }
    } else if (m >= dim) {
      space_exhausted = true;
    }

    const bool last = m >= cap || space_exhausted;
    if (!last && m % std::max(10, m / 8) != 0) continue;
    if (m < std::min(k, dim) && !last) continue;

    Eigen::VectorXcd values;
    Eigen::MatrixXcd vectors;
    if (!project(m, values, vectors)) continue;
    const double tail = space_exhausted ? 0.0 : hess(m, m - 1);
    const auto wanted = select_wanted(which, values, k);

    double worst = 0.0;
    for (int i : wanted) worst = std::max(worst, std::abs(tail * vectors(m - 1, i)));
    best_residual = std::min(best_residual, worst);
    if (worst > tol && !space_exhausted) {
      if (last) break;  // give up this cycle, restart
      continue;
    }

    std::vector<EigenPair> out;
    double worst_true = 0.0;
    for (int i : wanted) {
      EigenPair p;
      p.value = values[i];
      Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dim);
      for (int j = 0; j < m; ++j) x += vectors(j, i) * basis[j];
      const double xn = x.norm();
      if (xn > 0) x /= xn;
      p.vector = std::move(x);
      p.residual = true_residual(op, p);
      worst_true = std::max(worst_true, p.residual);
      out.push_back(std::move(p));
    }
    best_residual = std::min(best_residual, worst_true);
    if (worst_true <= tol) {
      sort_pairs(which, out);
      return {std::move(out), space_exhausted};
    }
    if (space_exhausted)
      throw ConvergenceError("topk_eigs: Krylov space exhausted before convergence", worst_true);
    if (last) break;
  }

  // Restart direction: span of the wanted Ritz vectors.
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd next = Eigen::VectorXd::Zero(dim);
  if (m > 0 && project(m, values, vectors)) {
    const auto wanted = select_wanted(which, values, k);
    for (int i : wanted) {
      const std::complex<double> weight = std::conj(vectors(m - 1, i));
      for (int j = 0; j < m; ++j) next += (vectors(j, i) * weight).real() * basis[j];
    }
  }
  const double n = next.norm();
  start = n > 1e-10 ? Eigen::VectorXd(next / n) : random_unit_vector(dim, rng);
  return {{}, false};
}

}  // namespace

std::vector<EigenPair> dense_eig(const MatrixOperator& op, int cap) {
  if (op.dim() > cap) throw std::runtime_error("dense_eig: dim exceeds cap");
  const Eigen::MatrixXd mat = op.to_dense();
  std::vector<EigenPair> out;
  out.reserve(op.dim());
  if (op.symmetric()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense_eig: solver failed");
    for (int i = 0; i < op.dim(); ++i) {
      EigenPair p;
      p.value = es.eigenvalues()[i];
      p.vector = es.eigenvectors().col(i).cast<std::complex<double>>();
      p.residual = true_residual(op, p);
      out.push_back(std::move(p));
    }
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(mat);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense_eig: solver failed");
    for (int i = 0; i < op.dim(); ++i) {
      EigenPair p;
      p.value = es.eigenvalues()[i];
      p.vector = es.eigenvectors().col(i);
      const double n = p.vector.norm();
      if (n > 0) p.vector /= n;
      p.residual = true_residual(op, p);
      out.push_back(std::move(p));
    }
    sort_pairs(Which::LargestReal, out);
  }
  return out;
}

std::vector<EigenPair> topk_eigs(const MatrixOperator& op, int k, Which which,
                                 SolverOptions opts) {
  const int dim = op.dim();
  if (k <= 0) throw std::invalid_argument("topk_eigs: k must be positive");
  if (k > dim) throw std::invalid_argument("topk_eigs: k must be <= dim");
  const double tol = opts.tol > 0 ? opts.tol : (op.symmetric() ? 1e-10 : 1e-8);
  const int max_basis = opts.max_basis > 0 ? opts.max_basis : std::max(4 * k, 240);

  Rng rng(opts.start_seed);
  Eigen::VectorXd start = random_unit_vector(dim, rng);
  double best = std::numeric_limits<double>::infinity();
  for (int cycle = 0; cycle <= opts.max_restarts; ++cycle) {
    auto res = op.symmetric()
                   ? krylov_cycle<true>(op, k, which, tol, max_basis, rng, start, best)
                   : krylov_cycle<false>(op, k, which, tol, max_basis, rng, start, best);
    if (!res.pairs.empty()) return std::move(res.pairs);
  }
  throw ConvergenceError("topk_eigs: restart cap exhausted", best);
}

std::vector<EigenPair> real_filter(std::vector<EigenPair> pairs, double imag_tol) {
  std::vector<EigenPair> out;
  for (auto& p : pairs) {
    if (std::abs(p.value.imag()) <= imag_tol * std::max(1.0, std::abs(p.value)))
      out.push_back(std::move(p));
  }
  sort_pairs(Which::LargestReal, out);
  return out;
}

Eigen::VectorXcd nb_node_part(const EigenPair& pair) {
  const int total = static_cast<int>(pair.vector.size());
  if (total % 2 != 0) throw std::invalid_argument("nb_node_part: vector length must be even");
  const int n = total / 2;
  Eigen::VectorXcd node = pair.vector.segment(n, n);
  const double norm = node.norm();
  if (norm < 1e-12 * pair.vector.norm())
    throw std::runtime_error("nb_node_part: degenerate pair (zero second block)");
  return node / norm;
}

std::vector<EigenPair> top_real_eigs(const MatrixOperator& op, int k, SolverOptions opts) {
  const int dim = op.dim();
  if (k <= 0) throw std::invalid_argument("top_real_eigs: k must be positive");
  // Structural zeros of the non-backtracking matrix (one cluster per
  // degree-1 chain) are defective: no solver carries meaningful digits or
  // eigenvectors there, so they are excluded from the ranking.
  constexpr double kZeroFloor = 1e-3;
  const int hard_cap = std::min(200, dim);
  int kp = std::min(std::max(2 * k, 20), hard_cap);
  int previous_found = -1;
  while (true) {
    auto pairs = topk_eigs(op, kp, Which::LargestMagnitude, opts);
    auto reals = real_filter(std::move(pairs));
    std::erase_if(reals, [](const EigenPair& p) { return std::abs(p.value) <= kZeroFloor; });
    const int found = static_cast<int>(reals.size());
    // Sparse non-backtracking spectra hold only a handful of real values
    // outside the complex bulk; once an escalation level stops uncovering
    // new ones, further levels only burn time.
    if (found >= k || kp >= hard_cap || found <= previous_found) {
      if (found > k) reals.resize(k);
      return reals;
    }
    previous_found = found;
    kp = std::min(2 * kp, hard_cap);
  }
}

}  // namespace nblab
