#include <schur/continuity.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <schur/douglas.hpp>
#include <schur/numeric.hpp>

namespace schur {

namespace {

constexpr double kMajorizationSlack = 1e-8;
constexpr double kDegenerateFrame = 1e-14;  // below this, the frame is the identity
constexpr int kTailWindow = 6;

// Orthonormal range basis of m, columns descending by singular value.
Matrix range_basis(const Matrix& m, const Tolerances& tol) {
  const Matrix gram = m * m.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> es((gram + gram.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const auto& vals = es.eigenvalues();
  const double cutoff = tol.tol_rank * std::max(vals(vals.size() - 1), 1.0);
  Index rank = 0;
  for (Index i = 0; i < vals.size(); ++i)
    if (vals(i) > cutoff) ++rank;
  Matrix basis(m.rows(), rank);
  for (Index i = 0; i < rank; ++i)
    basis.col(i) = es.eigenvectors().col(vals.size() - 1 - i);
  return basis;
}

}  // namespace

std::string to_string(TailVerdict v) {
  switch (v) {
    case TailVerdict::convergent: return "convergent";
    case TailVerdict::oscillating: return "oscillating";
    case TailVerdict::inconclusive: return "inconclusive";
  }
  throw std::logic_error("unknown tail verdict");
}

ContinuityReport continuity_probe(const MatrixFn& u_fn, const MatrixFn& v_fn,
                                  const CurveSpec& curve, const Tolerances& tol,
                                  double conv_tol, double osc_tol) {
  if (curve.samples.empty()) throw std::invalid_argument("curve has no samples");
  if (!(conv_tol > 0.0) || !(osc_tol > 0.0))
    throw std::invalid_argument("tail tolerances must be positive");

  ContinuityReport report;
  report.conv_tol = conv_tol;
  report.osc_tol = osc_tol;
  report.min_majorization_eig = std::numeric_limits<double>::infinity();

  std::vector<Matrix> factors;
  factors.reserve(curve.samples.size());
  for (const cd& lambda : curve.samples) {
    const Matrix u = u_fn(lambda);
    const Matrix v = v_fn(lambda);
    if (u.cols() != v.cols()) throw std::invalid_argument("factor pair shape mismatch");
    const Matrix gap = v.adjoint() * v - u.adjoint() * u;
    const double slack = kMajorizationSlack * std::max(1.0, op_norm(v.adjoint() * v));
    const double gap_eig = min_eig_hermitian(gap);
    report.min_majorization_eig = std::min(report.min_majorization_eig, gap_eig);
    if (gap_eig < -slack)
      throw std::invalid_argument("factor domination fails along the curve");
    factors.push_back(douglas_factor(u, v, tol));

    ContinuityRow row;
    row.lambda = lambda;
    row.norm_w = op_norm(factors.back());
    row.residual = op_norm(factors.back() * v - u) / std::max(1.0, op_norm(u));
    report.rows.push_back(row);
    report.sup_w = std::max(report.sup_w, row.norm_w);
  }

  const Matrix basis = range_basis(v_fn(curve.samples.back()), tol);
  const Matrix& w_ref = factors.back();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    double delta = 0.0;
    for (Index c = 0; c < basis.cols(); ++c)
      delta = std::max(delta, ((factors[i] - w_ref) * basis.col(c)).norm());
    report.rows[i].delta = delta;
  }

  // Tail rows: the last kTailWindow samples before the endpoint row.
  const std::size_t n = report.rows.size();
  if (n < 2) {
    report.tail = TailVerdict::inconclusive;
    return report;
  }
  const std::size_t tail_len = std::min<std::size_t>(kTailWindow, n - 1);
  double tail_max = 0.0, tail_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = n - 1 - tail_len; i + 1 < n; ++i) {
    tail_max = std::max(tail_max, report.rows[i].delta);
    tail_min = std::min(tail_min, report.rows[i].delta);
  }
  report.tail_oscillation = tail_max - tail_min;

  bool last_small = true;
  const std::size_t conv_len = std::min<std::size_t>(3, n - 1);
  for (std::size_t i = n - 1 - conv_len; i + 1 < n; ++i)
    if (report.rows[i].delta > conv_tol) last_small = false;

  if (report.tail_oscillation >= osc_tol)
    report.tail = TailVerdict::oscillating;
  else if (last_small)
    report.tail = TailVerdict::convergent;
  else
    report.tail = TailVerdict::inconclusive;
  return report;
}

BoundaryDiscontinuityExample make_boundary_discontinuity_example() {
  // Frame Z(lambda): rows are the orthonormal eigenvectors of
  // v = [[1, sqrt(a)], [sqrt(a), 2a]] with a = 1 - |lambda|^2, ordered so
  // that Z -> I as a -> 0 (the eigenvalues are (1 + 2a +- sqrt(1+4a^2))/2).
  auto frame = [](double a) -> Matrix {
    Matrix z = Matrix::Identity(2, 2);
    if (a < kDegenerateFrame) return z;
    const double root = std::sqrt(1.0 + 4.0 * a * a);
    const double sa = std::sqrt(a);
    const double rho_p = 2.0 + 8.0 * a * a - 2.0 * (1.0 - 2.0 * a) * root;
    const double rho_m = 2.0 + 8.0 * a * a + 2.0 * (1.0 - 2.0 * a) * root;
    z(0, 0) = 2.0 * sa / std::sqrt(rho_p);
    z(0, 1) = (root - (1.0 - 2.0 * a)) / std::sqrt(rho_p);
    z(1, 0) = -2.0 * sa / std::sqrt(rho_m);
    z(1, 1) = ((1.0 - 2.0 * a) + root) / std::sqrt(rho_m);
    return z;
  };
  auto eigs = [](double a) -> Matrix {
    const double root = std::sqrt(1.0 + 4.0 * a * a);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = (1.0 + 2.0 * a + root) / 2.0;
    d(1, 1) = (1.0 + 2.0 * a - root) / 2.0;
    return d;
  };
  auto oscillator = [](cd lambda) -> double {
    const double denom = 1.0 - lambda.real();
    if (denom <= 0.0) return 0.0;  // the singular point itself; never sampled
    const double s = std::sin(1.0 / denom);
    return s * s;
  };

  BoundaryDiscontinuityExample ex;
  ex.oscillator = oscillator;
  ex.v_fn = [frame, eigs](cd lambda) -> Matrix {
    const double a = 1.0 - std::norm(lambda);
    const Matrix z = frame(a);
    return z.transpose() * eigs(a) * z;
  };
  ex.u_fn = [frame, eigs, oscillator](cd lambda) -> Matrix {
    const double a = 1.0 - std::norm(lambda);
    const Matrix z = frame(a);
    Matrix phi = Matrix::Identity(2, 2);
    phi(1, 1) = oscillator(lambda);
    return z.transpose() * phi * eigs(a) * z;
  };
  ex.w_formula = [frame, oscillator](cd lambda) -> Matrix {
    const double a = 1.0 - std::norm(lambda);
    const Matrix z = frame(a);
    Matrix phi = Matrix::Identity(2, 2);
    phi(1, 1) = oscillator(lambda);
    return z.transpose() * phi * z;
  };
  return ex;
}

}  // namespace schur
