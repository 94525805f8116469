// Linear-fractional engine on the coefficient partition [[phi11, phi12],
// [phi21, phi22]]: evaluation, defect transport, and the boundary pull-back.
#include <schur/redheffer.hpp>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <schur/contraction.hpp>
#include <schur/douglas.hpp>
#include <schur/numeric.hpp>
#include <schur/sandwich.hpp>

namespace schur {

namespace {

constexpr double kDomainTol = 1e-9;      // margin below which the map is refused
constexpr double kInnerTol = 1e-6;       // boundary isometry verdict
constexpr double kBoundaryEqTol = 1e-6;  // defect-equality gap allowed on the rim
constexpr double kDefectSlack = 1e-9;    // PSD slack for the defect inequalities
constexpr double kResolventCap = 1e12;   // conditioning cap for resolvents
constexpr double kHypothesisCap = 1e8;   // boundedness / invertibility surrogate
constexpr double kPullbackTol = 1e-6;    // recovered-vs-direct witness agreement
constexpr double kTau = 6.28318530717958647692;

std::string format_lambda(cd lambda) {
  std::ostringstream os;
  os << lambda.real() << (lambda.imag() < 0.0 ? "" : "+") << lambda.imag() << "i";
  return os.str();
}

cd grid_lambda(double radius, int k, int n) {
  return std::polar(radius, kTau * double(k) / double(n));
}

// Inverse behind an explicit conditioning gate; the SVD route keeps results
// deterministic across backends.
Matrix bounded_inverse(const Matrix& m, cd lambda) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0 || sv(sv.size() - 1) < sv(0) / kResolventCap)
    throw std::domain_error("resolvent numerically singular at lambda=" +
                            format_lambda(lambda));
  return svd.matrixV() * sv.cwiseInverse().cast<cd>().asDiagonal() *
         svd.matrixU().adjoint();
}

double cond_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= 0.0)
    return std::numeric_limits<double>::infinity();
  return sv(0) / sv(sv.size() - 1);
}

struct CoefficientValues {
  Matrix p11;
  Matrix p12;
  Matrix p21;
};

CoefficientValues coefficients_at(const RedhefferCoefficients& phi, cd lambda) {
  return {phi.phi11.eval(lambda), phi.phi12.eval(lambda), phi.phi21.eval(lambda)};
}

void require_shapes(const RedhefferCoefficients& phi, const SchurFunction& f) {
  if (phi.phi11.cols() != f.rows() || phi.phi11.rows() != f.cols()) {
    std::ostringstream os;
    os << "input shape " << f.rows() << "x" << f.cols()
       << " is incompatible with the coefficient partition";
    throw std::invalid_argument(os.str());
  }
}

// Both defect factors of the image at one point:
//   l d_{R[K]}  = d_K (I - phi11 K)^{-1} phi12,
//   d_{R[K]*} l* = phi21 (I - K phi11)^{-1} d_{K*}.
FactorPair factors_at(const CoefficientValues& c, const Contraction& ck,
                      const Contraction& cr, cd lambda, const Tolerances& tol) {
  const Matrix& kv = ck.matrix;
  const Index dom = c.p11.rows();
  const Index ran = kv.rows();
  const Matrix res_dom =
      bounded_inverse(Matrix::Identity(dom, dom) - c.p11 * kv, lambda);
  const Matrix res_ran =
      bounded_inverse(Matrix::Identity(ran, ran) - kv * c.p11, lambda);
  const Matrix t_dom = ck.defects.d * res_dom * c.p12;
  const Matrix t_star = c.p21 * res_ran * ck.defects.d_star;
  FactorPair out;
  out.l = douglas_factor(t_dom, cr.defects.d, tol);
  out.l_star = douglas_factor(t_star.adjoint(), cr.defects.d_star, tol).adjoint();
  out.residual_l =
      op_norm(out.l * cr.defects.d - t_dom) / std::max(1.0, op_norm(t_dom));
  out.residual_l_star = op_norm(cr.defects.d_star * out.l_star - t_star) /
                        std::max(1.0, op_norm(t_star));
  return out;
}

struct DefectGaps {
  Matrix dom;
  Matrix ran;
};

}  // namespace

RedhefferCoefficients make_redheffer_coefficients(const SchurFunction& phi11,
                                                  const SchurFunction& phi12,
                                                  const SchurFunction& phi21,
                                                  const SchurFunction& phi22) {
  SchurFunction assembled = block2x2_fn(phi11, phi12, phi21, phi22);
  return {phi11, phi12, phi21, phi22, assembled};
}

double domain_margin(const RedhefferCoefficients& phi, const SchurFunction& f) {
  require_shapes(phi, f);
  const cd origin(0.0, 0.0);
  return 1.0 - op_norm(phi.phi11.eval(origin) * f.eval(origin));
}

SchurFunction apply(const RedhefferCoefficients& phi, const SchurFunction& f,
                    const Tolerances& tol) {
  tol.validate();
  const double margin = domain_margin(phi, f);
  if (margin < kDomainTol) {
    std::ostringstream os;
    os << "input sits outside the map domain: |phi11(0) f(0)| = " << 1.0 - margin;
    throw std::invalid_argument(os.str());
  }
  return lft_fn(phi.phi11, phi.phi12, phi.phi21, phi.phi22, f);
}

DifferenceReport difference_residual(const RedhefferCoefficients& phi, const SchurFunction& k1,
                                     const SchurFunction& k2, const SamplingGrid& grid,
                                     const Tolerances& tol) {
  tol.validate();
  const SchurFunction r1 = apply(phi, k1, tol);
  const SchurFunction r2 = apply(phi, k2, tol);
  DifferenceReport report;
  for (double radius : grid.radii) {
    for (int a = 0; a < grid.angles; ++a) {
      const cd lambda = grid_lambda(radius, a, grid.angles);
      const auto c = coefficients_at(phi, lambda);
      const Matrix k1v = k1.eval(lambda);
      const Matrix k2v = k2.eval(lambda);
      const Matrix res_ran1 = bounded_inverse(
          Matrix::Identity(k1v.rows(), k1v.rows()) - k1v * c.p11, lambda);
      const Matrix res_dom2 = bounded_inverse(
          Matrix::Identity(c.p11.rows(), c.p11.rows()) - c.p11 * k2v, lambda);
      const Matrix lhs = r1.eval(lambda) - r2.eval(lambda);
      const Matrix rhs = c.p21 * res_ran1 * (k1v - k2v) * res_dom2 * c.p12;
      report.max_residual = std::max(
          report.max_residual, op_norm(lhs - rhs) / std::max(1.0, op_norm(lhs)));
    }
  }
  report.pass = report.max_residual <= tol.tol_residual;
  return report;
}

DefectInequalityReport defect_inequality_check(const RedhefferCoefficients& phi,
                                               const SchurFunction& k, const SamplingGrid& grid,
                                               const Tolerances& tol) {
  tol.validate();
  const SchurFunction r = apply(phi, k, tol);
  auto gaps_at = [&phi, &k, &r](cd lambda) {
    const auto c = coefficients_at(phi, lambda);
    const Matrix kv = k.eval(lambda);
    const Matrix rv = r.eval(lambda);
    const Matrix res_dom = bounded_inverse(
        Matrix::Identity(c.p11.rows(), c.p11.rows()) - c.p11 * kv, lambda);
    const Matrix res_ran = bounded_inverse(
        Matrix::Identity(kv.rows(), kv.rows()) - kv * c.p11, lambda);
    const Matrix gram_dom =
        Matrix::Identity(kv.cols(), kv.cols()) - kv.adjoint() * kv;
    const Matrix gram_ran = Matrix::Identity(kv.rows(), kv.rows()) - kv * kv.adjoint();
    DefectGaps gaps;
    gaps.dom = Matrix::Identity(rv.cols(), rv.cols()) - rv.adjoint() * rv -
               c.p12.adjoint() * res_dom.adjoint() * gram_dom * res_dom * c.p12;
    gaps.ran = Matrix::Identity(rv.rows(), rv.rows()) - rv * rv.adjoint() -
               c.p21 * res_ran * gram_ran * res_ran.adjoint() * c.p21.adjoint();
    return gaps;
  };

  DefectInequalityReport report;
  report.min_eig_domain = std::numeric_limits<double>::infinity();
  report.min_eig_range = std::numeric_limits<double>::infinity();
  for (double radius : grid.radii) {
    for (int a = 0; a < grid.angles; ++a) {
      const DefectGaps gaps = gaps_at(grid_lambda(radius, a, grid.angles));
      report.min_eig_domain = std::min(report.min_eig_domain, min_eig_hermitian(gaps.dom));
      report.min_eig_range = std::min(report.min_eig_range, min_eig_hermitian(gaps.ran));
    }
  }
  report.interior_pass =
      report.min_eig_domain >= -kDefectSlack && report.min_eig_range >= -kDefectSlack;

  if (phi.assembled.extendable() && k.extendable()) {
    report.boundary_checked = true;
    const InnerReport inner = inner_check(phi.assembled, grid.boundary_angles, tol);
    for (int a = 0; a < grid.boundary_angles; ++a) {
      const DefectGaps gaps = gaps_at(grid_lambda(1.0, a, grid.boundary_angles));
      report.max_boundary_gap = std::max(report.max_boundary_gap, op_norm(gaps.dom));
    }
    report.boundary_equality =
        inner.inner && inner.co_inner && report.max_boundary_gap <= kBoundaryEqTol;
  }
  return report;
}

FactorPair factor_LLstar(const RedhefferCoefficients& phi, const SchurFunction& k, cd lambda,
                         const Tolerances& tol) {
  tol.validate();
  const SchurFunction r = apply(phi, k, tol);
  const Contraction ck = make_contraction(k.eval(lambda), tol);
  const Contraction cr = make_contraction(r.eval(lambda), tol);
  return factors_at(coefficients_at(phi, lambda), ck, cr, lambda, tol);
}

TransportOutcome transport_equiv(const RedhefferCoefficients& phi, const SchurFunction& f1,
                                 const SchurFunction& f2, const SamplingGrid& grid,
                                 const Tolerances& tol) {
  tol.validate();
  TransportOutcome out;
  const EquivFnResult evidence = classify_equiv_infty(f1, f2, grid, tol);
  if (evidence.verdict != FnVerdict::supported) {
    out.refusal = Refusal{
        "equivalence of the inputs is not supported on the grid: " + to_string(evidence.verdict),
        0.0};
    return out;
  }

  TransportCertificate cert;
  const double m1 = domain_margin(phi, f1);
  const double m2 = domain_margin(phi, f2);
  cert.domain_f1 = m1 >= kDomainTol;
  cert.domain_f2 = m2 >= kDomainTol;
  cert.domain_symmetric = cert.domain_f1 == cert.domain_f2;
  if (!cert.domain_f1 || !cert.domain_f2) {
    std::ostringstream os;
    os << "input outside the map domain: margins " << m1 << ", " << m2;
    out.refusal = Refusal{os.str(), 0.0};
    return out;
  }

  const SchurFunction r1 = apply(phi, f1, tol);
  const SchurFunction r2 = apply(phi, f2, tol);
  for (double radius : grid.radii) {
    for (int a = 0; a < grid.angles; ++a) {
      const cd lambda = grid_lambda(radius, a, grid.angles);
      const auto c = coefficients_at(phi, lambda);
      const Contraction ca = make_contraction(f1.eval(lambda), tol);
      const Contraction cb = make_contraction(f2.eval(lambda), tol);
      const SandwichResult qt =
          sandwich_solve(ca.matrix - cb.matrix, ca.defects.d_star, cb.defects.d, tol);
      cert.input_witness_sup = std::max(cert.input_witness_sup, op_norm(qt.q));

      const Contraction cr1 = make_contraction(r1.eval(lambda), tol);
      const Contraction cr2 = make_contraction(r2.eval(lambda), tol);
      const FactorPair at1 = factors_at(c, ca, cr1, lambda, tol);
      const FactorPair at2 = factors_at(c, cb, cr2, lambda, tol);
      const Matrix w = at1.l_star * qt.q * at2.l;
      const Matrix target = cr1.matrix - cr2.matrix;
      const double residual = op_norm(target - cr1.defects.d_star * w * cr2.defects.d) /
                              std::max(1.0, op_norm(target));

      TransportPoint pt{lambda, op_norm(at2.l), op_norm(at1.l_star), op_norm(w), residual, w};
      cert.sup_transported = std::max(cert.sup_transported, pt.norm_witness);
      cert.max_residual = std::max(cert.max_residual, residual);
      cert.points.push_back(std::move(pt));
    }
  }
  cert.pass = cert.max_residual <= tol.tol_residual &&
              cert.sup_transported <= cert.input_witness_sup + tol.tol_residual &&
              cert.domain_symmetric;
  out.certificate = std::move(cert);
  return out;
}

TransportOutcome transport_preorder(const RedhefferCoefficients& phi, const SchurFunction& f,
                                    const SchurFunction& g, const SamplingGrid& grid,
                                    const Tolerances& tol) {
  tol.validate();
  TransportOutcome out;
  const PreceqFnResult order = classify_preceq_infty(f, g, grid, tol);
  if (order.verdict != FnVerdict::supported) {
    out.refusal = Refusal{
        "order of the inputs is not supported on the grid: " + to_string(order.verdict), 0.0};
    return out;
  }

  TransportCertificate cert;
  const double mf = domain_margin(phi, f);
  const double mg = domain_margin(phi, g);
  cert.domain_f1 = mf >= kDomainTol;
  cert.domain_f2 = mg >= kDomainTol;
  cert.domain_symmetric = cert.domain_f1 == cert.domain_f2;
  if (!cert.domain_f1 || !cert.domain_f2) {
    std::ostringstream os;
    os << "input outside the map domain: margins " << mf << ", " << mg;
    out.refusal = Refusal{os.str(), 0.0};
    return out;
  }

  const SchurFunction rf = apply(phi, f, tol);
  const SchurFunction rg = apply(phi, g, tol);
  for (double radius : grid.radii) {
    for (int a = 0; a < grid.angles; ++a) {
      const cd lambda = grid_lambda(radius, a, grid.angles);
      const auto c = coefficients_at(phi, lambda);
      const Matrix fv = f.eval(lambda);
      const Contraction cg = make_contraction(g.eval(lambda), tol);
      const SandwichResult q =
          sandwich_solve(fv - cg.matrix, cg.defects.d_star, cg.defects.d, tol);
      cert.input_witness_sup = std::max(cert.input_witness_sup, op_norm(q.q));

      const Index ran = fv.rows();
      Matrix res_ran_f;
      try {
        res_ran_f = bounded_inverse(Matrix::Identity(ran, ran) - fv * c.p11, lambda);
      } catch (const std::domain_error&) {
        out.refusal = Refusal{"bounded-resolvent hypothesis unmet at lambda=" +
                                  format_lambda(lambda),
                              0.0};
        return out;
      }
      const double res_norm = op_norm(res_ran_f);
      if (res_norm > kHypothesisCap) {
        std::ostringstream os;
        os << "bounded-resolvent hypothesis unmet at lambda=" << format_lambda(lambda)
           << ": norm " << res_norm;
        out.refusal = Refusal{os.str(), 0.0};
        return out;
      }

      const Contraction crg = make_contraction(rg.eval(lambda), tol);
      const FactorPair at_g = factors_at(c, cg, crg, lambda, tol);
      const Matrix bracket =
          Matrix::Identity(ran, ran) +
          q.q * cg.defects.d * c.p11 * res_ran_f * cg.defects.d_star;
      const Matrix n_mat = at_g.l_star * bracket;
      const Matrix w = n_mat * q.q * at_g.l;
      const Matrix target = rf.eval(lambda) - crg.matrix;
      const double residual = op_norm(target - crg.defects.d_star * w * crg.defects.d) /
                              std::max(1.0, op_norm(target));

      TransportPoint pt{lambda, op_norm(at_g.l), op_norm(at_g.l_star), op_norm(w), residual, w};
      cert.sup_n = std::max(cert.sup_n, op_norm(n_mat));
      cert.sup_transported = std::max(cert.sup_transported, pt.norm_witness);
      cert.max_residual = std::max(cert.max_residual, residual);
      cert.points.push_back(std::move(pt));
    }
  }
  cert.pass = cert.max_residual <= tol.tol_residual && cert.domain_symmetric;
  out.certificate = std::move(cert);
  return out;
}

InnerReport inner_check(const SchurFunction& f, Index boundary_angles, const Tolerances& tol) {
  tol.validate();
  if (boundary_angles <= 0)
    throw std::invalid_argument("boundary sample count must be positive");
  if (!f.extendable())
    throw std::domain_error("function does not extend to the boundary circle");
  InnerReport report;
  for (Index k = 0; k < boundary_angles; ++k) {
    const Matrix v = f.eval(std::polar(1.0, kTau * double(k) / double(boundary_angles)));
    report.max_isometry_gap =
        std::max(report.max_isometry_gap,
                 op_norm(v.adjoint() * v - Matrix::Identity(v.cols(), v.cols())));
    report.max_coisometry_gap =
        std::max(report.max_coisometry_gap,
                 op_norm(v * v.adjoint() - Matrix::Identity(v.rows(), v.rows())));
  }
  report.inner = report.max_isometry_gap <= kInnerTol;
  report.co_inner = report.max_coisometry_gap <= kInnerTol;
  return report;
}

DimensionReport dimension_monotonicity(const RedhefferCoefficients& phi, const SchurFunction& f,
                                       const SamplingGrid& grid, const Tolerances& tol) {
  tol.validate();
  const SchurFunction r = apply(phi, f, tol);
  DimensionReport report;
  report.interior_pass = true;
  bool cond_ok = true;

  auto visit = [&](cd lambda, std::vector<Index>& in_ranks, std::vector<Index>& out_ranks,
                   bool& pass, bool& equal) {
    const auto c = coefficients_at(phi, lambda);
    const double c12 = cond_number(c.p12);
    const double c21 = cond_number(c.p21);
    report.max_cond = std::max({report.max_cond, c12, c21});
    if (!(c12 < kHypothesisCap) || !(c21 < kHypothesisCap)) cond_ok = false;
    const DefectPair df = defect_pair(f.eval(lambda), tol);
    const DefectPair dr = defect_pair(r.eval(lambda), tol);
    in_ranks.push_back(df.rank);
    out_ranks.push_back(dr.rank);
    if (df.rank > dr.rank || df.rank_star > dr.rank_star) pass = false;
    if (df.rank != dr.rank || df.rank_star != dr.rank_star) equal = false;
  };

  bool interior_equal = true;
  for (double radius : grid.radii)
    for (int a = 0; a < grid.angles; ++a)
      visit(grid_lambda(radius, a, grid.angles), report.input_ranks, report.output_ranks,
            report.interior_pass, interior_equal);

  if (phi.assembled.extendable() && f.extendable()) {
    report.boundary_checked = true;
    report.boundary_pass = true;
    report.boundary_equal = true;
    for (int a = 0; a < grid.boundary_angles; ++a)
      visit(grid_lambda(1.0, a, grid.boundary_angles), report.boundary_input_ranks,
            report.boundary_output_ranks, report.boundary_pass, report.boundary_equal);
    if (report.boundary_equal) {
      const InnerReport inner = inner_check(phi.assembled, grid.boundary_angles, tol);
      report.boundary_equal = inner.inner && inner.co_inner;
    }
  }
  report.hypothesis_ok = cond_ok;
  return report;
}

PullbackOutcome pullback_equiv(const RedhefferCoefficients& phi, const SchurFunction& f,
                               const SchurFunction& g, const EquivFnResult& evidence,
                               const SamplingGrid& grid, const Tolerances& tol) {
  tol.validate();
  PullbackOutcome out;
  if (evidence.verdict == FnVerdict::refuted_pointwise ||
      evidence.verdict == FnVerdict::refuted_diverging) {
    out.refusal =
        Refusal{"image evidence is refuted (" + to_string(evidence.verdict) +
                    "); nothing to pull back",
                0.0};
    return out;
  }
  if (!phi.assembled.extendable() || !f.extendable() || !g.extendable()) {
    out.refusal = Refusal{
        "pull-back hypothesis unmet: factors do not extend to the boundary circle", 0.0};
    return out;
  }
  const InnerReport inner = inner_check(phi.assembled, grid.boundary_angles, tol);
  if (!inner.inner || !inner.co_inner) {
    std::ostringstream os;
    os << "pull-back hypothesis unmet: coefficients are not two-sided inner (gaps "
       << inner.max_isometry_gap << ", " << inner.max_coisometry_gap << ")";
    out.refusal = Refusal{os.str(), 0.0};
    return out;
  }
  const double mf = domain_margin(phi, f);
  const double mg = domain_margin(phi, g);
  if (mf < kDomainTol || mg < kDomainTol) {
    out.refusal = Refusal{"pull-back hypothesis unmet: input outside the map domain", 0.0};
    return out;
  }

  const SchurFunction rf = apply(phi, f, tol);
  const SchurFunction rg = apply(phi, g, tol);
  PullbackReport report;
  for (int a = 0; a < grid.boundary_angles; ++a) {
    const double angle = kTau * double(a) / double(grid.boundary_angles);
    const cd lambda = std::polar(1.0, angle);
    const auto c = coefficients_at(phi, lambda);
    const double c12 = cond_number(c.p12);
    const double c21 = cond_number(c.p21);
    if (!(c12 < kHypothesisCap) || !(c21 < kHypothesisCap)) {
      std::ostringstream os;
      os << "pull-back hypothesis unmet: off-diagonal coefficient ill-conditioned "
            "on the rim (cond "
         << std::max(c12, c21) << ")";
      out.refusal = Refusal{os.str(), 0.0};
      return out;
    }

    const Contraction cf = make_contraction(f.eval(lambda), tol);
    const Contraction cg = make_contraction(g.eval(lambda), tol);
    const Contraction crf = make_contraction(rf.eval(lambda), tol);
    const Contraction crg = make_contraction(rg.eval(lambda), tol);
    const SandwichResult direct =
        sandwich_solve(cf.matrix - cg.matrix, cf.defects.d_star, cg.defects.d, tol);
    const SandwichResult image =
        sandwich_solve(crf.matrix - crg.matrix, crf.defects.d_star, crg.defects.d, tol);
    const FactorPair at_f = factors_at(c, cf, crf, lambda, tol);
    const FactorPair at_g = factors_at(c, cg, crg, lambda, tol);

    const Matrix q_rec = at_f.l_star.adjoint() * image.q * at_g.l.adjoint();
    const Matrix q_rec_c = cf.defects.basis_star.adjoint() * q_rec * cg.defects.basis;
    const Matrix direct_c = cf.defects.basis_star.adjoint() * direct.q * cg.defects.basis;
    const Matrix target = cf.matrix - cg.matrix;

    PullbackRow row;
    row.angle = angle;
    row.norm_q_rec = op_norm(q_rec_c);
    row.mismatch = op_norm(q_rec_c - direct_c);
    row.residual = op_norm(target - cf.defects.d_star * q_rec * cg.defects.d) /
                   std::max(1.0, op_norm(target));
    report.max_mismatch = std::max(report.max_mismatch, row.mismatch);
    report.max_residual = std::max(report.max_residual, row.residual);
    report.rows.push_back(row);
  }
  report.pass = report.max_mismatch <= kPullbackTol && report.max_residual <= kPullbackTol;
  out.report = std::move(report);
  return out;
}

DiagonalModeExample make_diagonal_mode_example(const std::vector<double>& deltas) {
  if (deltas.empty()) throw std::invalid_argument("at least one mode is required");
  const Index n = Index(deltas.size());
  Matrix nmat = Matrix::Zero(n, n);
  Matrix mmat = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const double d = deltas[size_t(i)];
    if (!(d > 0.0 && d < 1.0))
      throw std::invalid_argument("mode magnitudes must lie strictly inside (0, 1)");
    nmat(i, i) = d;
    mmat(i, i) = std::sqrt(1.0 - d * d);
  }
  const Matrix zero = Matrix::Zero(n, n);
  DiagonalModeExample ex{
      make_redheffer_coefficients(poly_fn({zero, nmat}), constant_fn(mmat),
                                  poly_fn({zero, -mmat}), constant_fn(nmat)),
      constant_fn(Matrix::Identity(n, n)), constant_fn(zero), {}};
  const std::vector<double> modes(deltas);
  ex.expected_q = [modes, n](cd lambda) {
    Matrix w = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
      w(i, i) = -lambda / (cd(1.0, 0.0) - lambda * modes[size_t(i)]);
    return w;
  };
  return ex;
}

}  // namespace schur
