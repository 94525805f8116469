#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <schur/preorder.hpp>
#include <schur/profile.hpp>
#include <schur/schur_function.hpp>
#include <schur/types.hpp>

namespace schur {

// Coefficient blocks of the linear-fractional map
//   F -> phi22 + phi21 F (I - phi11 F)^{-1} phi12,
// stored alongside the assembled 2x2 block function whose contractivity
// validates the partition as a whole.
struct RedhefferCoefficients {
  SchurFunction phi11;
  SchurFunction phi12;
  SchurFunction phi21;
  SchurFunction phi22;
  SchurFunction assembled;
};

RedhefferCoefficients make_redheffer_coefficients(const SchurFunction& phi11,
                                                  const SchurFunction& phi12,
                                                  const SchurFunction& phi21,
                                                  const SchurFunction& phi22);

// 1 - |phi11(0) f(0)|; the map is defined on functions with positive margin.
double domain_margin(const RedhefferCoefficients& phi, const SchurFunction& f);

// Builds the image function; throws std::invalid_argument when f sits on or
// outside the domain edge. Contractivity of the image is validated on
// construction samples; a near-singular resolvent at an evaluation point
// surfaces later as std::domain_error with the offending lambda.
SchurFunction apply(const RedhefferCoefficients& phi, const SchurFunction& f,
                    const Tolerances& tol);

// Difference identity: R[K1] - R[K2] equals
// phi21 (I - K1 phi11)^{-1} (K1 - K2) (I - phi11 K2)^{-1} phi12 at every
// point of the grid.
struct DifferenceReport {
  double max_residual = 0.0;
  bool pass = false;
};

DifferenceReport difference_residual(const RedhefferCoefficients& phi, const SchurFunction& k1,
                                     const SchurFunction& k2, const SamplingGrid& grid,
                                     const Tolerances& tol);

// Defect inequalities of the image: on the domain side
//   D_{R[K]}^2 >= phi12* (I - phi11 K)^{-*} D_K^2 (I - phi11 K)^{-1} phi12,
// and the mirrored inequality on the range side. For two-sided-inner
// coefficients the domain-side inequality closes to an equality on the
// boundary circle.
struct DefectInequalityReport {
  double min_eig_domain = 0.0;
  double min_eig_range = 0.0;
  bool interior_pass = false;
  bool boundary_checked = false;
  double max_boundary_gap = 0.0;
  bool boundary_equality = false;
};

DefectInequalityReport defect_inequality_check(const RedhefferCoefficients& phi,
                                               const SchurFunction& k, const SamplingGrid& grid,
                                               const Tolerances& tol);

// Factors carrying the image defects:
//   L D_{R[K]} = D_K (I - phi11 K)^{-1} phi12,
//   D_{R[K]*} L* = phi21 (I - K phi11)^{-1} D_{K*}.
// Both are contractions; on the boundary circle with inner coefficients the
// domain factor acts isometrically on the image defect space.
struct FactorPair {
  Matrix l;
  Matrix l_star;
  double residual_l = 0.0;
  double residual_l_star = 0.0;
};

FactorPair factor_LLstar(const RedhefferCoefficients& phi, const SchurFunction& k, cd lambda,
                         const Tolerances& tol);

struct TransportPoint {
  cd lambda;
  double norm_l = 0.0;
  double norm_lstar = 0.0;
  double norm_witness = 0.0;
  double residual = 0.0;
  Matrix witness;
};

// Witness transport certificate: at every grid point the image difference
// factors through the image defects with the transported witness, whose sup
// never exceeds the input witness sup (equivalence route) or is reported
// with the amplification factor (pre-order route).
struct TransportCertificate {
  std::vector<TransportPoint> points;
  double sup_transported = 0.0;
  double input_witness_sup = 0.0;
  double sup_n = 0.0;  // pre-order route: sup of the left correction factor
  double max_residual = 0.0;
  bool domain_f1 = false;
  bool domain_f2 = false;
  bool domain_symmetric = true;
  bool pass = false;
};

struct TransportOutcome {
  std::optional<TransportCertificate> certificate;
  std::optional<Refusal> refusal;
  bool ok() const { return certificate.has_value(); }
};

// Equivalent inputs: image difference = D_{R[F1]*} (L* Q~ L) D_{R[F2]} with
// L taken at F2 and L* at F1; the transported witness is contractively
// dominated by Q~.
TransportOutcome transport_equiv(const RedhefferCoefficients& phi, const SchurFunction& f1,
                                 const SchurFunction& f2, const SamplingGrid& grid,
                                 const Tolerances& tol);

// Ordered inputs: with Q the pointwise order witness of (f, g), the image
// difference = D_{R[G]*} (N Q L) D_{R[G]} where
//   N = L* (I + Q D_G phi11 (I - F phi11)^{-1} D_{G*}),
// both factors taken at G. Requires the resolvent (I - F phi11)^{-1} to
// stay below the boundedness cap on the grid.
TransportOutcome transport_preorder(const RedhefferCoefficients& phi, const SchurFunction& f,
                                    const SchurFunction& g, const SamplingGrid& grid,
                                    const Tolerances& tol);

// Boundary isometry/co-isometry gaps at equispaced circle samples.
struct InnerReport {
  double max_isometry_gap = 0.0;
  double max_coisometry_gap = 0.0;
  bool inner = false;
  bool co_inner = false;
};

InnerReport inner_check(const SchurFunction& f, Index boundary_angles, const Tolerances& tol);

// Defect ranks never drop through the map when the off-diagonal
// coefficients are invertible (condition-number surrogate below 1e8).
struct DimensionReport {
  bool hypothesis_ok = false;
  double max_cond = 0.0;
  std::vector<Index> input_ranks;
  std::vector<Index> output_ranks;
  bool interior_pass = false;
  bool boundary_checked = false;
  std::vector<Index> boundary_input_ranks;
  std::vector<Index> boundary_output_ranks;
  bool boundary_pass = false;
  bool boundary_equal = false;  // meaningful for two-sided-inner coefficients
};

DimensionReport dimension_monotonicity(const RedhefferCoefficients& phi, const SchurFunction& f,
                                       const SamplingGrid& grid, const Tolerances& tol);

// Boundary pull-back for two-sided-inner coefficients with invertible
// off-diagonal blocks: the recovered witness L**(t) Q~(t) L*(t) for the
// input pair is validated against the directly computed pointwise witness
// at every boundary sample.
struct PullbackRow {
  double angle = 0.0;
  double norm_q_rec = 0.0;
  double mismatch = 0.0;
  double residual = 0.0;
};

struct PullbackReport {
  std::vector<PullbackRow> rows;
  double max_mismatch = 0.0;
  double max_residual = 0.0;
  bool pass = false;
};

struct PullbackOutcome {
  std::optional<PullbackReport> report;
  std::optional<Refusal> refusal;
  bool ok() const { return report.has_value(); }
};

PullbackOutcome pullback_equiv(const RedhefferCoefficients& phi, const SchurFunction& f,
                               const SchurFunction& g, const EquivFnResult& evidence,
                               const SamplingGrid& grid, const Tolerances& tol);

// Stacked one-mode coefficients [[lambda N, M], [-lambda M, N]] with
// N = diag(deltas), M = diag(sqrt(1 - delta^2)): two-sided inner, with
// closed-form order witness -lambda (I - lambda N)^{-1} between the images
// of the identity and of zero. The witness sup grows like
// delta/(1 - delta^2) as the modes approach 1.
struct DiagonalModeExample {
  RedhefferCoefficients phi;
  SchurFunction f1;  // constant identity
  SchurFunction f2;  // constant zero
  std::function<Matrix(cd)> expected_q;
};

DiagonalModeExample make_diagonal_mode_example(const std::vector<double>& deltas);

}  // namespace schur
