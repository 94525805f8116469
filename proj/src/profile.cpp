#include <schur/profile.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <schur/contraction.hpp>
#include <schur/numeric.hpp>
#include <schur/sandwich.hpp>

namespace schur {

namespace {

constexpr double kPremiseGapFraction = 1e-2;  // gap <= frac * |u| arms the probe
constexpr double kRadiusCap = 1e8;            // keeps eps sampling finite for near-equal pairs

cd grid_point(double radius, Index k, Index n_angles) {
  const double theta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n_angles);
  return cd(radius * std::cos(theta), radius * std::sin(theta));
}

void require_same_shape(const SchurFunction& f, const SchurFunction& g) {
  if (f.rows() != g.rows() || f.cols() != g.cols())
    throw std::invalid_argument("functions have different shapes");
}

std::vector<double> tail_ratios(const std::vector<double>& radius_max, double floor) {
  std::vector<double> ratios;
  for (std::size_t j = 0; j + 1 < radius_max.size(); ++j)
    ratios.push_back(radius_max[j + 1] / std::max(radius_max[j], floor));
  return ratios;
}

}  // namespace

std::string to_string(ProfileClass c) {
  switch (c) {
    case ProfileClass::bounded: return "evidence-bounded";
    case ProfileClass::diverging: return "evidence-diverging";
    case ProfileClass::inconclusive: return "inconclusive";
    case ProfileClass::refused_pointwise: return "refused-pointwise";
  }
  throw std::logic_error("unknown profile class");
}

std::string to_string(FnVerdict v) {
  switch (v) {
    case FnVerdict::supported: return "supported";
    case FnVerdict::refuted_diverging: return "refuted-diverging";
    case FnVerdict::refuted_pointwise: return "refuted-pointwise";
    case FnVerdict::inconclusive: return "inconclusive";
  }
  throw std::logic_error("unknown verdict");
}

ProfileClass classify_ring_growth(const std::vector<double>& radius_max,
                                  const DivergencePolicy& policy) {
  if (radius_max.empty()) return ProfileClass::inconclusive;
  const double m_first = radius_max.front();
  const double m_last = radius_max.back();
  const auto ratios = tail_ratios(radius_max, policy.floor);
  const int tail = std::min<int>(policy.tail, static_cast<int>(ratios.size()));

  bool tail_grows = tail > 0;
  bool tail_flat = true;
  for (int i = 0; i < tail; ++i) {
    const double r = ratios[ratios.size() - 1 - static_cast<std::size_t>(i)];
    if (r < policy.diverge_ratio) tail_grows = false;
    if (r > policy.bounded_ratio) tail_flat = false;
  }

  if (m_last >= policy.diverge_factor * std::max(m_first, policy.floor) && tail_grows)
    return ProfileClass::diverging;
  if (m_last <= policy.bounded_factor * m_first && tail_flat)
    return ProfileClass::bounded;
  return ProfileClass::inconclusive;
}

WitnessProfile pointwise_witness_profile(const SchurFunction& f, const SchurFunction& g,
                                         const SamplingGrid& grid, const Tolerances& tol,
                                         const DivergencePolicy& policy) {
  require_same_shape(f, g);
  if (grid.radii.empty() || grid.angles <= 0)
    throw std::invalid_argument("grid needs at least one radius and one angle");
  for (double r : grid.radii)
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("grid radii must lie in (0, 1)");

  WitnessProfile profile;
  profile.inf_r_lambda = std::numeric_limits<double>::infinity();
  profile.radius_max.assign(grid.radii.size(), 0.0);

  for (std::size_t j = 0; j < grid.radii.size(); ++j) {
    for (Index k = 0; k < grid.angles; ++k) {
      const cd lambda = grid_point(grid.radii[j], k, grid.angles);
      const auto outcome = check_preceq(f.eval(lambda), g.eval(lambda), tol);
      if (!outcome.ok()) {
        profile.classification = ProfileClass::refused_pointwise;
        profile.refusal_lambda = lambda;
        profile.refusal_reason = outcome.refusal->reason;
        return profile;
      }
      const auto& w = *outcome.witness;
      ProfilePoint pt;
      pt.lambda = lambda;
      pt.radius = grid.radii[j];
      pt.angle = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(grid.angles);
      pt.norm_q = op_norm(w.x);
      pt.norm_r = op_norm(w.y);
      pt.r_lambda = w.r;
      pt.residual_x = w.residual_x;
      pt.residual_y = w.residual_y;
      profile.points.push_back(pt);

      profile.radius_max[j] = std::max(profile.radius_max[j], pt.norm_q);
      profile.sup_q = std::max(profile.sup_q, pt.norm_q);
      profile.sup_r = std::max(profile.sup_r, pt.norm_r);
      profile.inf_r_lambda = std::min(profile.inf_r_lambda, pt.r_lambda);
    }
  }

  profile.growth_ratios = tail_ratios(profile.radius_max, policy.floor);
  profile.classification = classify_ring_growth(profile.radius_max, policy);
  return profile;
}

namespace {

// Max of |(1-eps)G + epsF| over the outermost interior ring plus, when both
// trees extend continuously, the boundary ring.
double segment_sup(const SchurFunction& f, const SchurFunction& g, cd eps,
                   const SamplingGrid& grid) {
  double sup = 0.0;
  const double r_out = *std::max_element(grid.radii.begin(), grid.radii.end());
  for (Index k = 0; k < grid.angles; ++k) {
    const cd lambda = grid_point(r_out, k, grid.angles);
    sup = std::max(sup, op_norm((1.0 - eps) * g.eval(lambda) + eps * f.eval(lambda)));
  }
  if (f.extendable() && g.extendable()) {
    for (Index k = 0; k < grid.boundary_angles; ++k) {
      const cd lambda = grid_point(1.0, k, grid.boundary_angles);
      sup = std::max(sup, op_norm((1.0 - eps) * g.eval(lambda) + eps * f.eval(lambda)));
    }
  }
  return sup;
}

}  // namespace

PreceqFnResult classify_preceq_infty(const SchurFunction& f, const SchurFunction& g,
                                     const SamplingGrid& grid, const Tolerances& tol,
                                     const DivergencePolicy& policy) {
  PreceqFnResult result;
  result.profile = pointwise_witness_profile(f, g, grid, tol, policy);

  switch (result.profile.classification) {
    case ProfileClass::refused_pointwise:
      result.verdict = FnVerdict::refuted_pointwise;
      return result;
    case ProfileClass::diverging:
      result.verdict = FnVerdict::refuted_diverging;
      return result;
    case ProfileClass::inconclusive:
      result.verdict = FnVerdict::inconclusive;
      return result;
    case ProfileClass::bounded:
      break;
  }

  const double r = std::min(result.profile.inf_r_lambda, kRadiusCap);
  if (!(r > 0.0)) {
    result.verdict = FnVerdict::inconclusive;
    return result;
  }
  auto& c = result.corroboration;
  c.ran = true;
  c.r_used = r;
  c.n_eps = 16;
  for (int i = 0; i < c.n_eps; ++i) {
    const double phase = 2.0 * M_PI * i / c.n_eps;
    const cd eps = r * cd(std::cos(phase), std::sin(phase));
    c.max_combo_norm = std::max(c.max_combo_norm, segment_sup(f, g, eps, grid));
  }
  c.pass = c.max_combo_norm <= 1.0 + tol.tol_residual;
  result.verdict = c.pass ? FnVerdict::supported : FnVerdict::inconclusive;
  return result;
}

EquivFnResult classify_equiv_infty(const SchurFunction& f, const SchurFunction& g,
                                   const SamplingGrid& grid, const Tolerances& tol,
                                   const DivergencePolicy& policy) {
  EquivFnResult result;
  result.forward = classify_preceq_infty(f, g, grid, tol, policy);
  result.backward = classify_preceq_infty(g, f, grid, tol, policy);

  // Cross sweep: reuse the one-sided norms point by point. The forward and
  // backward profiles visit the same grid in the same order.
  const auto& fwd = result.forward.profile;
  const auto& bwd = result.backward.profile;
  const std::size_t n = std::min(fwd.points.size(), bwd.points.size());
  result.cross_radius_max.assign(grid.radii.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const cd lambda = fwd.points[i].lambda;
    const auto a = make_contraction(f.eval(lambda), tol);
    const auto b = make_contraction(g.eval(lambda), tol);
    const auto cross =
        sandwich_solve(a.matrix - b.matrix, a.defects.d_star, b.defects.d, tol);
    CrossPoint pt;
    pt.lambda = lambda;
    pt.norm_q_tilde = op_norm(cross.q);
    pt.residual = cross.residual;
    pt.bound_claimed = fwd.points[i].norm_q * std::sqrt(2.0 * bwd.points[i].norm_q + 1.0);
    pt.bound_pass = pt.norm_q_tilde <= pt.bound_claimed + 1e-8 * std::max(1.0, pt.bound_claimed);
    if (!cross.accepted && !result.cross_refusal_lambda) result.cross_refusal_lambda = lambda;
    result.cross_bounds_pass = result.cross_bounds_pass && pt.bound_pass;
    result.sup_q_tilde = std::max(result.sup_q_tilde, pt.norm_q_tilde);
    const std::size_t ring = i / static_cast<std::size_t>(grid.angles);
    if (ring < result.cross_radius_max.size())
      result.cross_radius_max[ring] =
          std::max(result.cross_radius_max[ring], pt.norm_q_tilde);
    result.cross_points.push_back(pt);
  }

  const auto fv = result.forward.verdict;
  const auto bv = result.backward.verdict;
  if (fv == FnVerdict::refuted_pointwise || bv == FnVerdict::refuted_pointwise ||
      result.cross_refusal_lambda) {
    result.verdict = FnVerdict::refuted_pointwise;
  } else if (fv == FnVerdict::refuted_diverging || bv == FnVerdict::refuted_diverging) {
    result.verdict = FnVerdict::refuted_diverging;
  } else if (fv == FnVerdict::supported && bv == FnVerdict::supported &&
             result.cross_bounds_pass) {
    result.verdict = FnVerdict::supported;
  } else {
    result.verdict = FnVerdict::inconclusive;
  }
  return result;
}

RankProfileReport rank_profile(const SchurFunction& k, const SamplingGrid& grid,
                               const Tolerances& tol) {
  if (grid.radii.empty() || grid.angles <= 0)
    throw std::invalid_argument("grid needs at least one radius and one angle");
  RankProfileReport report;
  for (double radius : grid.radii) {
    for (Index a = 0; a < grid.angles; ++a) {
      const cd lambda = grid_point(radius, a, grid.angles);
      const auto defects = defect_pair(k.eval(lambda), tol);
      report.interior_ranks.push_back(defects.rank);
      report.interior_ranks_star.push_back(defects.rank_star);
    }
  }
  report.interior_rank = report.interior_ranks.front();
  report.interior_rank_star = report.interior_ranks_star.front();
  report.interior_constant = true;
  for (std::size_t i = 0; i < report.interior_ranks.size(); ++i) {
    if (report.interior_ranks[i] != report.interior_rank ||
        report.interior_ranks_star[i] != report.interior_rank_star)
      report.interior_constant = false;
  }

  if (k.extendable() && grid.boundary_angles > 0) {
    report.boundary_evaluated = true;
    for (Index a = 0; a < grid.boundary_angles; ++a) {
      const cd lambda = grid_point(1.0, a, grid.boundary_angles);
      const auto defects = defect_pair(k.eval(lambda), tol);
      report.boundary_ranks.push_back(defects.rank);
      report.boundary_ranks_star.push_back(defects.rank_star);
      if (defects.rank > report.interior_rank ||
          defects.rank_star > report.interior_rank_star)
        report.boundary_contained = false;
    }
  }
  return report;
}

BoundaryBoundReport boundary_bound_check(const SchurFunction& f, const SchurFunction& g,
                                         double q_inf, const Vector& u, cd lambda,
                                         const Tolerances& tol) {
  require_same_shape(f, g);
  if (u.size() != f.cols()) throw std::invalid_argument("vector length mismatch");
  if (std::abs(lambda) >= 1.0) throw std::invalid_argument("lambda must be interior");
  if (q_inf < 0.0) throw std::invalid_argument("witness bound must be non-negative");

  BoundaryBoundReport report;
  const Vector gu = g.eval(lambda) * u;
  const Vector fu = f.eval(lambda) * u;
  const double nu = u.norm();
  report.lhs = (gu - fu).norm();
  report.rhs = q_inf * std::sqrt(std::max(0.0, 2.0 * nu * (nu - gu.norm())));
  report.pass = report.lhs <= report.rhs + tol.tol_residual;
  return report;
}

CurveSpec CurveSpec::radial(cd endpoint, int depth, bool include_endpoint) {
  if (depth < 1) throw std::invalid_argument("curve depth must be positive");
  if (std::abs(endpoint) > 1.0 + 1e-12)
    throw std::invalid_argument("curve endpoint outside the closed disc");
  CurveSpec curve;
  for (int k = 1; k <= depth; ++k)
    curve.samples.push_back((1.0 - std::ldexp(1.0, -k)) * endpoint);
  if (include_endpoint) curve.samples.push_back(endpoint);
  return curve;
}

CurveSpec CurveSpec::through(std::vector<cd> points) {
  if (points.empty()) throw std::invalid_argument("curve needs at least one point");
  for (const cd& p : points)
    if (std::abs(p) > 1.0 + 1e-12)
      throw std::invalid_argument("curve point outside the closed disc");
  CurveSpec curve;
  curve.samples = std::move(points);
  return curve;
}

RadialProbeReport radial_probe(const SchurFunction& f, const SchurFunction& g,
                               const CurveSpec& curve, const Vector& u, double q_inf,
                               const Tolerances& tol) {
  require_same_shape(f, g);
  if (u.size() != f.cols()) throw std::invalid_argument("vector length mismatch");
  if (q_inf < 0.0) throw std::invalid_argument("witness bound must be non-negative");

  RadialProbeReport report;
  report.q_inf_used = q_inf;
  const double nu = u.norm();
  for (const cd& lambda : curve.samples) {
    const Matrix gv = g.eval(lambda);
    const Matrix fv = f.eval(lambda);
    RadialProbeRow row;
    row.lambda = lambda;
    row.norm_gu = (gv * u).norm();
    row.norm_fu = (fv * u).norm();
    row.diff = ((gv - fv) * u).norm();
    row.norm_g = op_norm(gv);
    row.norm_f = op_norm(fv);
    const double delta = std::max(0.0, nu - row.norm_gu);
    if (delta <= kPremiseGapFraction * nu) report.premise_triggered = true;
    row.chain_pass =
        nu - row.norm_fu <= delta + q_inf * std::sqrt(2.0 * nu * delta) + tol.tol_residual;
    report.chain_holds = report.chain_holds && row.chain_pass;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace schur
