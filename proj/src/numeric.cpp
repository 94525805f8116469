#include <schur/numeric.hpp>

#include <cmath>

namespace schur {

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (!m.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double min_eig_hermitian(const Matrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("matrix not square");
  if (h.size() == 0) return 0.0;
  Matrix sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed");
  return es.eigenvalues()(0);
}

Matrix psd_sqrt(const Matrix& h, double clip_below, double hermit_tol) {
  if (h.rows() != h.cols()) throw std::invalid_argument("matrix not square");
  if (h.size() == 0) return h;
  double scale = std::max(1.0, op_norm(h));
  if (op_norm(h - h.adjoint()) > hermit_tol * scale)
    throw std::invalid_argument("psd_sqrt: matrix not hermitian");
  Matrix sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed");
  Eigen::VectorXd vals = es.eigenvalues();
  double clip = clip_below * scale;
  for (Index i = 0; i < vals.size(); ++i) {
    if (vals(i) < -clip) throw std::runtime_error("psd_sqrt: matrix not PSD");
    vals(i) = std::sqrt(std::max(vals(i), 0.0));
  }
  Matrix r = es.eigenvectors() * vals.cast<cd>().asDiagonal() *
             es.eigenvectors().adjoint();
  return ((r + r.adjoint()) / 2.0).eval();
}

Matrix psd_sqrt(const Matrix& h, const Tolerances& tol) {
  return psd_sqrt(h, tol.tol_psd);
}

Matrix pinv(const Matrix& m, double rel_cutoff) {
  if (m.size() == 0) return m.adjoint();
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double cut = rel_cutoff * std::max(sv.size() > 0 ? sv(0) : 0.0, 1.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.cast<cd>().asDiagonal() * svd.matrixU().adjoint();
}

std::pair<Matrix, Matrix> pos_neg_parts(const Matrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("matrix not square");
  Matrix sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed");
  Eigen::VectorXd vp = es.eigenvalues().cwiseMax(0.0);
  Eigen::VectorXd vn = (-es.eigenvalues()).cwiseMax(0.0);
  const Matrix& u = es.eigenvectors();
  return {u * vp.cast<cd>().asDiagonal() * u.adjoint(),
          u * vn.cast<cd>().asDiagonal() * u.adjoint()};
}

namespace {

struct SqrtWithBasis {
  Matrix root;
  Matrix basis;
  Index rank = 0;
};

// One eigendecomposition yields both the square root and its range basis.
// The rank cutoff applies to the gram's eigenvalues (their roundoff floor is
// ~1e-15; after the square root it would inflate to ~1e-8 and swamp the
// cutoff).  Directions below the cutoff are zeroed in the root as well, so
// the root is exactly supported on the returned basis.
SqrtWithBasis sqrt_with_basis(const Matrix& gram, double clip_below,
                              double rank_cutoff) {
  SqrtWithBasis out;
  if (gram.size() == 0) {
    out.root = gram;
    out.basis = gram;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es((gram + gram.adjoint()) / 2.0);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed");
  Eigen::VectorXd vals = es.eigenvalues();
  double scale = std::max({1.0, std::abs(vals(0)),
                           std::abs(vals(vals.size() - 1))});
  double cut = rank_cutoff * std::max(vals(vals.size() - 1), 1.0);
  Eigen::VectorXd roots = Eigen::VectorXd::Zero(vals.size());
  for (Index i = 0; i < vals.size(); ++i) {
    if (vals(i) < -clip_below * scale)
      throw std::runtime_error("defect gram not PSD");
    if (vals(i) > cut) {
      roots(i) = std::sqrt(vals(i));
      ++out.rank;
    }
  }
  out.root = es.eigenvectors() * roots.cast<cd>().asDiagonal() *
             es.eigenvectors().adjoint();
  out.root = ((out.root + out.root.adjoint()) / 2.0).eval();
  out.basis.resize(gram.rows(), out.rank);
  for (Index k = 0; k < out.rank; ++k)
    out.basis.col(k) = es.eigenvectors().col(vals.size() - 1 - k);
  return out;
}

}  // namespace

DefectPair defect_pair(const Matrix& c, const Tolerances& tol) {
  tol.validate();
  double n = op_norm(c);
  if (n > 1.0 + tol.tol_residual)
    throw std::invalid_argument("defect_pair: not a contraction");
  Matrix gram = Matrix::Identity(c.cols(), c.cols()) - c.adjoint() * c;
  Matrix gram_star = Matrix::Identity(c.rows(), c.rows()) - c * c.adjoint();
  // Norms within roundoff of 1 make the grams indefinite by tiny amounts;
  // the clip window below tol_residual absorbs that.
  SqrtWithBasis s = sqrt_with_basis(gram, tol.tol_residual, tol.tol_rank);
  SqrtWithBasis ss =
      sqrt_with_basis(gram_star, tol.tol_residual, tol.tol_rank);
  DefectPair dp;
  dp.d = std::move(s.root);
  dp.basis = std::move(s.basis);
  dp.rank = s.rank;
  dp.d_star = std::move(ss.root);
  dp.basis_star = std::move(ss.basis);
  dp.rank_star = ss.rank;
  dp.tol_used = tol.tol_rank;
  return dp;
}

}  // namespace schur
