#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace schur {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Numerical gates shared across the library.  tol_psd bounds how far below
// zero an eigenvalue may sit before a matrix stops counting as PSD; tol_rank
// is the relative cutoff deciding which singular/eigen directions are kept;
// tol_residual gates exactness checks on reconstructed factorizations.
struct Tolerances {
  double tol_psd = 1e-12;
  double tol_rank = 1e-10;
  double tol_residual = 1e-8;

  void validate() const {
    if (!(tol_psd > 0) || !(tol_rank > 0) || !(tol_residual > 0))
      throw std::invalid_argument("tolerances must be positive");
    if (tol_psd > 1e-2 || tol_rank > 1e-2 || tol_residual > 1e-2)
      throw std::invalid_argument("tolerances implausibly large");
  }
};

}  // namespace schur
