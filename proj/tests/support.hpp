#pragma once

#include <schur/types.hpp>

#include <random>

// Deterministic random matrix generators.  Every test passes an explicit
// seed so reruns are bit-identical.
namespace testsupport {

using schur::cd;
using schur::Index;
using schur::Matrix;

inline Matrix random_matrix(Index rows, Index cols, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = cd(dist(gen), dist(gen));
  return m;
}

inline Matrix random_hermitian(Index n, unsigned seed) {
  Matrix m = random_matrix(n, n, seed);
  return ((m + m.adjoint()) / 2.0).eval();
}

// Norm scaled to exactly `norm` (largest singular value).
inline Matrix random_with_norm(Index rows, Index cols, double norm,
                               unsigned seed) {
  Matrix m = random_matrix(rows, cols, seed);
  Eigen::JacobiSVD<Matrix> svd(m);
  return (m * (norm / svd.singularValues()(0))).eval();
}

inline Matrix random_contraction(Index n, unsigned seed, double norm = 0.9) {
  return random_with_norm(n, n, norm, seed);
}

// Strictly contractive square matrix, margin away from the unit sphere.
inline Matrix random_strict_contraction(Index n, unsigned seed) {
  return random_with_norm(n, n, 0.8, seed);
}

// Square isometry = unitary; built from the QR of a random matrix.
inline Matrix random_unitary(Index n, unsigned seed) {
  Matrix m = random_matrix(n, n, seed);
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  return q;
}

}  // namespace testsupport
