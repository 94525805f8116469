#pragma once

#include <optional>
#include <string>
#include <vector>

#include <schur/preorder.hpp>
#include <schur/schur_function.hpp>
#include <schur/types.hpp>

namespace schur {

// Grid sampling can only gather evidence for behaviour on the whole disc;
// the policy below makes the bounded/diverging calls explicit and tunable.
// Ring maxima m_j are compared against the innermost ring and against their
// own tail growth.
struct DivergencePolicy {
  double diverge_factor = 100.0;  // m_J >= factor * max(m_1, floor)
  double diverge_ratio = 1.05;    // and the last `tail` ratios all >= this
  double bounded_factor = 10.0;   // m_J <= factor * m_1
  double bounded_ratio = 1.005;   // and the last `tail` ratios all <= this
  int tail = 3;
  double floor = 1e-14;  // denominator guard for ratios of near-zero maxima
};

enum class ProfileClass { bounded, diverging, inconclusive, refused_pointwise };
std::string to_string(ProfileClass c);

struct ProfilePoint {
  cd lambda;
  double radius = 0.0;
  double angle = 0.0;  // radians
  double norm_q = 0.0;
  double norm_r = 0.0;
  double r_lambda = 0.0;
  double residual_x = 0.0;
  double residual_y = 0.0;
};

struct WitnessProfile {
  std::vector<ProfilePoint> points;       // ring-major, angle within ring
  std::vector<double> radius_max;         // max norm_q per ring
  std::vector<double> growth_ratios;      // radius_max[j+1] / radius_max[j]
  double sup_q = 0.0;
  double sup_r = 0.0;
  double inf_r_lambda = 0.0;
  ProfileClass classification = ProfileClass::inconclusive;
  std::optional<cd> refusal_lambda;
  std::string refusal_reason;
};

// Evaluates both functions on the interior grid and runs the finite
// pre-order check at every point; a pointwise refusal is recorded as data
// and stops the sweep.
WitnessProfile pointwise_witness_profile(const SchurFunction& f, const SchurFunction& g,
                                         const SamplingGrid& grid, const Tolerances& tol,
                                         const DivergencePolicy& policy = {});

// Pure classification of ring maxima; exposed for policy tests.
ProfileClass classify_ring_growth(const std::vector<double>& radius_max,
                                  const DivergencePolicy& policy);

enum class FnVerdict { supported, refuted_diverging, refuted_pointwise, inconclusive };
std::string to_string(FnVerdict v);

// Segment corroboration: with r the infimum of the pointwise radii, the
// perturbed functions (1-eps)G + epsF for |eps| = r must stay in the unit
// ball on the outer ring and (when both factors extend) the boundary ring.
struct SegmentCorroboration {
  bool ran = false;
  double r_used = 0.0;
  int n_eps = 0;
  double max_combo_norm = 0.0;
  bool pass = false;
};

struct PreceqFnResult {
  FnVerdict verdict = FnVerdict::inconclusive;
  WitnessProfile profile;
  SegmentCorroboration corroboration;
};

PreceqFnResult classify_preceq_infty(const SchurFunction& f, const SchurFunction& g,
                                     const SamplingGrid& grid, const Tolerances& tol,
                                     const DivergencePolicy& policy = {});

// Cross witness Q~(lambda) solving F - G = D_{F*} Q~ D_G, with the pointwise
// norm bound |Q~| <= |Q| sqrt(2|Q'| + 1) checked against the one-sided
// profiles at the same point.
struct CrossPoint {
  cd lambda;
  double norm_q_tilde = 0.0;
  double residual = 0.0;
  double bound_claimed = 0.0;
  bool bound_pass = true;
};

struct EquivFnResult {
  FnVerdict verdict = FnVerdict::inconclusive;
  PreceqFnResult forward;   // f against g
  PreceqFnResult backward;  // g against f
  std::vector<CrossPoint> cross_points;
  std::vector<double> cross_radius_max;
  double sup_q_tilde = 0.0;
  bool cross_bounds_pass = true;
  std::optional<cd> cross_refusal_lambda;
};

EquivFnResult classify_equiv_infty(const SchurFunction& f, const SchurFunction& g,
                                   const SamplingGrid& grid, const Tolerances& tol,
                                   const DivergencePolicy& policy = {});

// Defect ranks of K(lambda) and K(lambda)* across the grid. Interior ranks
// must be constant for rational symbols; boundary ranks can only drop and
// are reported separately (and only when the tree extends to the circle).
struct RankProfileReport {
  std::vector<Index> interior_ranks;
  std::vector<Index> interior_ranks_star;
  bool interior_constant = false;
  Index interior_rank = 0;
  Index interior_rank_star = 0;
  bool boundary_evaluated = false;
  std::vector<Index> boundary_ranks;
  std::vector<Index> boundary_ranks_star;
  bool boundary_contained = true;  // boundary ranks never exceed interior
};

RankProfileReport rank_profile(const SchurFunction& k, const SamplingGrid& grid,
                               const Tolerances& tol);

// Displacement bound pinned by a uniform witness norm: for any q_inf with
// F - G = D_{G*} Q D_G and |Q| <= q_inf on the disc,
//   |(G - F)(lambda) u| <= q_inf * sqrt(2 |u| (|u| - |G(lambda) u|)).
struct BoundaryBoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

BoundaryBoundReport boundary_bound_check(const SchurFunction& f, const SchurFunction& g,
                                         double q_inf, const Vector& u, cd lambda,
                                         const Tolerances& tol);

// A sampled path in the closed disc, ordered toward its endpoint.
struct CurveSpec {
  std::vector<cd> samples;

  // Dyadic approach t_k = 1 - 2^-k toward `endpoint`, optionally including
  // the endpoint itself as the final sample.
  static CurveSpec radial(cd endpoint, int depth, bool include_endpoint);
  static CurveSpec through(std::vector<cd> points);
};

// Norm-transfer probe along a curve: whenever the target norm |G u| gets
// within gap delta of |u|, the dominated side must satisfy
//   |u| - |F u| <= delta + q_inf sqrt(2 |u| delta).
struct RadialProbeRow {
  cd lambda;
  double norm_gu = 0.0;
  double norm_fu = 0.0;
  double diff = 0.0;  // |(G - F)(lambda) u|
  double norm_g = 0.0;
  double norm_f = 0.0;
  bool chain_pass = true;
};

struct RadialProbeReport {
  std::vector<RadialProbeRow> rows;
  bool premise_triggered = false;  // the gap |u| - |G u| ever got small
  bool chain_holds = true;
  double q_inf_used = 0.0;
};

RadialProbeReport radial_probe(const SchurFunction& f, const SchurFunction& g,
                               const CurveSpec& curve, const Vector& u, double q_inf,
                               const Tolerances& tol);

}  // namespace schur
