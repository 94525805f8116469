#pragma once

#include <schur/types.hpp>

#include <utility>

namespace schur {

// Largest singular value; 0 for an empty matrix.  Throws if any entry is
// not finite.
double op_norm(const Matrix& m);

// Smallest eigenvalue of the hermitian part (h + h*)/2.
double min_eig_hermitian(const Matrix& h);

// Hermitian square root.  Eigenvalues in [-clip_below, 0) are treated as
// exact zeros (roundoff from an intended PSD matrix); anything lower throws.
// The input must be hermitian to within hermit_tol relative deviation.
Matrix psd_sqrt(const Matrix& h, double clip_below, double hermit_tol = 1e-8);
Matrix psd_sqrt(const Matrix& h, const Tolerances& tol);

// Moore-Penrose pseudoinverse.  Singular values below
// rel_cutoff * max(sigma_max, 1) are treated as zero, the same absolute-floor
// convention used for defect ranks.
Matrix pinv(const Matrix& m, double rel_cutoff);

// Jordan split h = pos - neg with pos, neg PSD and pos*neg = 0.
std::pair<Matrix, Matrix> pos_neg_parts(const Matrix& h);

// Defect operators of a contraction c: d = (I - c*c)^{1/2} on the domain,
// d_star = (I - cc*)^{1/2} on the codomain, together with orthonormal bases
// of their ranges (eigenvectors whose eigenvalue clears the rank cutoff,
// descending).  rank/rank_star are the corresponding defect ranks.
struct DefectPair {
  Matrix d;
  Matrix d_star;
  Matrix basis;       // cols x rank
  Matrix basis_star;  // rows x rank_star
  Index rank = 0;
  Index rank_star = 0;
  double tol_used = 0.0;
};

// Throws std::invalid_argument if op_norm(c) > 1 + tol.tol_residual.
DefectPair defect_pair(const Matrix& c, const Tolerances& tol);

}  // namespace schur
