#pragma once

#include <schur/types.hpp>

#include <unsupported/Eigen/KroneckerProduct>

#include <stdexcept>

// Independent reference computations used to cross-check library results.
// These deliberately use different algorithms than the library: power
// iteration instead of SVD for operator norms, and a vectorized Kronecker
// least-squares solve instead of pseudoinverse sandwiches for factor
// recovery.
namespace oracle {

using schur::cd;
using schur::Index;
using schur::Matrix;
using schur::Vector;

// Operator norm via power iteration on m* m.  Deterministic start vector.
inline double op_norm_power(const Matrix& m, int iters = 500) {
  if (m.size() == 0) return 0.0;
  Matrix g = m.adjoint() * m;
  Vector v = Vector::Ones(g.rows());
  v(0) = cd(1.0, 0.5);  // break symmetry deterministically
  v.normalize();
  double lambda = 0.0;
  for (int i = 0; i < iters; ++i) {
    Vector w = g * v;
    double n = w.norm();
    if (n == 0.0) return 0.0;
    v = w / n;
    lambda = n;
  }
  return std::sqrt(lambda);
}

// Minimal-Frobenius-norm solution Q of  P = L Q R  via the vectorized
// normal-equations route: vec(P) = (R^T ⊗ L) vec(Q), solved by SVD-based
// least squares.  Returns Q reshaped.
inline Matrix kron_least_squares(const Matrix& p, const Matrix& l,
                                 const Matrix& r) {
  const Index qr = l.cols(), qc = r.rows();
  Matrix k = Eigen::kroneckerProduct(r.transpose(), l);
  Vector pv(p.size());
  for (Index j = 0; j < p.cols(); ++j)
    for (Index i = 0; i < p.rows(); ++i) pv(j * p.rows() + i) = p(i, j);
  Vector qv = k.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(pv);
  Matrix q(qr, qc);
  for (Index j = 0; j < qc; ++j)
    for (Index i = 0; i < qr; ++i) q(i, j) = qv(j * qr + i);
  return q;
}

// Hermitian square root by explicit eigendecomposition and reconstruction.
inline Matrix sqrt_psd_eigen(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("oracle eigensolver failed");
  Vector vals = es.eigenvalues().cast<cd>();
  for (Index i = 0; i < vals.size(); ++i) {
    double v = vals(i).real();
    if (v < -1e-10) throw std::runtime_error("oracle: matrix not PSD");
    vals(i) = std::sqrt(std::max(v, 0.0));
  }
  return es.eigenvectors() * vals.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace oracle
