#include <schur/douglas.hpp>
#include <schur/numeric.hpp>

namespace schur {

Matrix douglas_factor(const Matrix& t, const Matrix& s,
                      const Tolerances& tol) {
  if (t.cols() != s.cols())
    throw std::invalid_argument("douglas_factor: column counts differ");
  Matrix z = t * pinv(s, tol.tol_rank);
  double residual = op_norm(z * s - t);
  if (residual > tol.tol_residual * std::max(1.0, op_norm(t)))
    throw std::runtime_error("douglas_factor: no exact factor exists");
  return z;
}

}  // namespace schur
