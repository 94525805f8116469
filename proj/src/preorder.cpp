#include <schur/douglas.hpp>
#include <schur/numeric.hpp>
#include <schur/preorder.hpp>
#include <schur/sandwich.hpp>

#include <cmath>

namespace schur {

namespace {

constexpr double kUnboundedRadius = 1e300;

double bound_slack(double claimed) { return 1e-9 * std::max(1.0, claimed); }

BoundEntry make_bound(std::string name, double claimed, double achieved) {
  BoundEntry e;
  e.name = std::move(name);
  e.claimed = claimed;
  e.achieved = achieved;
  e.pass = achieved <= claimed + bound_slack(claimed);
  return e;
}

Matrix compress(const Matrix& m, const Matrix& left_basis,
                const Matrix& right_basis) {
  return left_basis.adjoint() * m * right_basis;
}

}  // namespace

double radius_from_y(const Matrix& y_compressed) {
  if (y_compressed.size() == 0) return kUnboundedRadius;
  double ny = op_norm(y_compressed);
  double rey = op_norm((y_compressed + y_compressed.adjoint()) / 2.0);
  double den = ny + std::sqrt(ny * ny + std::max(2.0 * rey - 1.0, 0.0));
  if (den < 1e-12) return kUnboundedRadius;
  return 1.0 / den;
}

PreorderOutcome check_preceq(const Matrix& a, const Matrix& b,
                             const Tolerances& tol) {
  tol.validate();
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("check_preceq: shape mismatch");
  Contraction cb = make_contraction(b, tol);
  Contraction ca = make_contraction(a, tol);
  const DefectPair& dp = cb.defects;

  PreorderOutcome out;

  SandwichResult sx = sandwich_solve(a - b, dp.d_star, dp.d, tol);
  if (!sx.accepted) {
    out.refusal = Refusal{"difference not carried by the defect pair",
                          sx.residual};
    return out;
  }
  Matrix metric = Matrix::Identity(a.cols(), a.cols()) - a.adjoint() * b;
  SandwichResult sy = sandwich_solve(metric, dp.d, dp.d, tol);
  if (!sy.accepted) {
    out.refusal = Refusal{"metric term not carried by the domain defect",
                          sy.residual};
    return out;
  }

  PreorderWitness w;
  w.basis = dp.basis;
  w.basis_star = dp.basis_star;
  w.x = compress(sx.q, dp.basis_star, dp.basis);
  w.y = compress(sy.q, dp.basis, dp.basis);
  w.residual_x = sx.residual;
  w.residual_y = sy.residual;

  if (dp.rank > 0) {
    Matrix g = w.y + w.y.adjoint() - Matrix::Identity(dp.rank, dp.rank);
    w.min_eig_2re_y_minus_i = min_eig_hermitian(g);
    // Solvability of the metric factorization forces this positivity; a
    // clear violation signals inconsistent input rather than roundoff.
    if (w.min_eig_2re_y_minus_i < -1e-6 * std::max(1.0, op_norm(w.y))) {
      out.refusal = Refusal{"metric witness fails positivity",
                            -w.min_eig_2re_y_minus_i};
      return out;
    }
  }

  w.r = radius_from_y(w.y);

  double nx = op_norm(w.x);
  double ny = op_norm(w.y);
  double rey = op_norm((w.y + w.y.adjoint()) / 2.0);
  double root = std::sqrt(std::max(2.0 * rey - 1.0, 0.0));
  w.bounds.entries.push_back(make_bound("x_vs_y", ny + root, nx));
  w.bounds.entries.push_back(make_bound("y_vs_x", 1.0 + nx, ny));
  double r = w.r;
  w.bounds.entries.push_back(make_bound(
      "x_vs_radius", (2.0 + 2.0 * std::sqrt(r) + r) / (2.0 * r), nx));
  w.bounds.entries.push_back(
      make_bound("y_vs_radius", (2.0 + r) / (2.0 * r), ny));
  // The certified radius must attain the y-derived lower bound (it is
  // computed from that formula, so the entry records the provenance).
  w.bounds.entries.push_back(make_bound("radius_vs_y", w.r, radius_from_y(w.y)));

  out.witness = std::move(w);
  return out;
}

Matrix y_from_x(const Matrix& x_compressed, const Contraction& b) {
  const DefectPair& dp = b.defects;
  Matrix x_full = dp.basis_star * x_compressed * dp.basis.adjoint();
  Matrix y_full = Matrix::Identity(b.matrix.cols(), b.matrix.cols()) -
                  x_full.adjoint() * b.matrix;
  return dp.basis.adjoint() * y_full * dp.basis;
}

Matrix x_from_y(const Matrix& y_compressed, const Contraction& a,
                const Contraction& b, const Tolerances& tol) {
  const DefectPair& dp = b.defects;
  const Matrix& v = dp.basis;
  Index rank = dp.rank;
  Matrix g = y_compressed + y_compressed.adjoint() -
             Matrix::Identity(rank, rank);
  // The compressed metric factor is positive (strictly, on the defect
  // space); roundoff dips are clipped at the residual scale.
  Matrix s = psd_sqrt(g, tol.tol_residual);
  Matrix w_map = s * v.adjoint() * dp.d;

  Matrix diff = a.matrix - b.matrix;
  Matrix stack(a.matrix.cols() + a.matrix.rows(), a.matrix.cols());
  stack.topRows(a.matrix.cols()) = a.defects.d;
  stack.bottomRows(a.matrix.rows()) = diff;
  // stack^* stack = d_b (2 Re y - I) d_b makes this factorization exact.
  Matrix k = douglas_factor(stack, w_map, tol);
  Matrix m_tilde = k.bottomRows(a.matrix.rows());
  Matrix m_c = m_tilde * s;

  Matrix x_cols = dp.d_star * m_c +
                  b.matrix * v *
                      (Matrix::Identity(rank, rank) - y_compressed.adjoint());
  return dp.basis_star.adjoint() * x_cols;
}

SegmentReport segment_check(const Matrix& a, const Matrix& b, double r,
                            int n_samples, const Tolerances& tol) {
  tol.validate();
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("segment_check: shape mismatch");
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("segment_check: radius must be positive");
  if (n_samples < 8)
    throw std::invalid_argument("segment_check: need at least 8 samples");

  SegmentReport rep;
  rep.radius = r;
  Matrix diff = a - b;
  for (double ring : {r, r / 2.0}) {
    for (int k = 0; k < n_samples; ++k) {
      double theta = 2.0 * M_PI * k / n_samples;
      cd eps = ring * cd(std::cos(theta), std::sin(theta));
      double n = op_norm(b + eps * diff);
      ++rep.samples;
      if (n > rep.max_norm) {
        rep.max_norm = n;
        rep.argmax = eps;
      }
    }
  }
  rep.all_contractive = rep.max_norm <= 1.0 + tol.tol_residual;
  return rep;
}

EpsilonDefect epsilon_defect(const Matrix& a, const Matrix& b, cd eps) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("epsilon_defect: shape mismatch");
  Index n = a.cols();
  Matrix t = b + eps * (a - b);
  EpsilonDefect out;
  out.direct = Matrix::Identity(n, n) - t.adjoint() * t;

  Matrix metric = Matrix::Identity(n, n) - a.adjoint() * b;
  Matrix re_m = (metric + metric.adjoint()) / 2.0;
  Matrix im_m = (metric - metric.adjoint()) / cd(0.0, 2.0);
  Matrix diff = a - b;
  out.composed = (1.0 - 2.0 * eps.real()) *
                     (Matrix::Identity(n, n) - b.adjoint() * b) +
                 2.0 * eps.real() * re_m + 2.0 * eps.imag() * im_m -
                 std::norm(eps) * diff.adjoint() * diff;
  out.mismatch = op_norm(out.direct - out.composed);
  return out;
}

EquivOutcome check_equiv(const Matrix& a, const Matrix& b,
                         const Tolerances& tol) {
  EquivOutcome out;

  PreorderOutcome fwd = check_preceq(a, b, tol);
  if (!fwd.ok()) {
    out.refusal = Refusal{"forward order fails: " + fwd.refusal->reason,
                          fwd.refusal->residual};
    return out;
  }
  PreorderOutcome bwd = check_preceq(b, a, tol);
  if (!bwd.ok()) {
    out.refusal = Refusal{"backward order fails: " + bwd.refusal->reason,
                          bwd.refusal->residual};
    return out;
  }

  Contraction ca = make_contraction(a, tol);
  Contraction cb = make_contraction(b, tol);
  const DefectPair& da = ca.defects;
  const DefectPair& db = cb.defects;

  SandwichResult sxt = sandwich_solve(a - b, da.d_star, db.d, tol);
  if (!sxt.accepted) {
    out.refusal = Refusal{"difference not carried by the cross defect pair",
                          sxt.residual};
    return out;
  }
  Matrix metric = Matrix::Identity(a.cols(), a.cols()) - a.adjoint() * b;
  SandwichResult syt = sandwich_solve(metric, da.d, db.d, tol);
  if (!syt.accepted) {
    out.refusal = Refusal{"metric term not carried by the cross defect pair",
                          syt.residual};
    return out;
  }

  Matrix m_fwd, m_bwd;
  try {
    m_fwd = douglas_factor(da.d, db.d, tol);  // m_fwd d_b = d_a
    m_bwd = douglas_factor(db.d, da.d, tol);  // m_bwd d_a = d_b
  } catch (const std::runtime_error&) {
    out.refusal = Refusal{"domain defects incomparable", 0.0};
    return out;
  }

  EquivWitness w;
  w.forward = std::move(*fwd.witness);
  w.backward = std::move(*bwd.witness);
  w.basis_a = da.basis;
  w.basis_a_star = da.basis_star;
  w.basis_b = db.basis;
  w.basis_b_star = db.basis_star;
  w.x_tilde = compress(sxt.q, da.basis_star, db.basis);
  w.y_tilde = compress(syt.q, da.basis, db.basis);
  w.residual_x_tilde = sxt.residual;
  w.residual_y_tilde = syt.residual;
  w.derived_m = m_fwd;

  // The reversed difference witness, needed for the bound on ||x||.
  SandwichResult sxtp = sandwich_solve(b - a, db.d_star, da.d, tol);
  double nxtp = sxtp.accepted
                    ? op_norm(compress(sxtp.q, db.basis_star, da.basis))
                    : 0.0;

  double nx = op_norm(w.forward.x);
  double nxp = op_norm(w.backward.x);
  double ny = op_norm(w.forward.y);
  double nyp = op_norm(w.backward.y);
  double reyp = op_norm((w.backward.y + w.backward.y.adjoint()) / 2.0);
  double nxt = op_norm(w.x_tilde);
  double nyt = op_norm(w.y_tilde);

  auto hyper = [](double t) { return t * t + t * std::sqrt(1.0 + t * t); };

  w.bounds.entries.push_back(make_bound(
      "cross_x_vs_pair", nx * std::sqrt(2.0 * nxp + 1.0), nxt));
  w.bounds.entries.push_back(make_bound(
      "cross_y_vs_pair",
      ny * std::sqrt(std::max(2.0 * reyp - 1.0, 0.0)), nyt));
  w.bounds.entries.push_back(
      make_bound("x_vs_cross_reversed", hyper(nxtp), nx));
  w.bounds.entries.push_back(make_bound("xprime_vs_cross", hyper(nxt), nxp));
  w.bounds.entries.push_back(make_bound("y_vs_cross", 2.0 * nyt * nyt, ny));
  w.bounds.entries.push_back(
      make_bound("yprime_vs_cross", 2.0 * nyt * nyt, nyp));
  w.bounds.entries.push_back(
      make_bound("factor_vs_cross_y", 2.0 * nyt, op_norm(m_fwd)));
  w.bounds.entries.push_back(make_bound(
      "reversed_factor_vs_cross_x", nxt + std::sqrt(1.0 + nxt * nxt),
      op_norm(m_bwd)));

  out.witness = std::move(w);
  return out;
}

}  // namespace schur
