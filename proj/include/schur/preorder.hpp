#pragma once

#include <schur/contraction.hpp>
#include <schur/types.hpp>

#include <optional>
#include <string>
#include <vector>

namespace schur {

// One verified norm inequality: `achieved` must not exceed `claimed` (up to
// a relative slack applied by the checker).
struct BoundEntry {
  std::string name;
  double claimed = 0.0;
  double achieved = 0.0;
  bool pass = false;
};

struct BoundReport {
  std::vector<BoundEntry> entries;
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

// Witness data for a <= b in the defect-difference order.  x and y are
// stored compressed to the defect bases of b: x maps defect-of-b
// coordinates to defect-of-b* coordinates (rank_star x rank), y acts on
// defect-of-b coordinates (rank x rank).  The compressed witnesses are the
// unique ones supported on the defect spaces.
struct PreorderWitness {
  Matrix x;
  Matrix y;
  double r = 0.0;  // certified segment radius derived from y
  double residual_x = 0.0;
  double residual_y = 0.0;
  double min_eig_2re_y_minus_i = 0.0;
  BoundReport bounds;
  Matrix basis;       // defect basis of b (cols x rank)
  Matrix basis_star;  // defect basis of b* (rows x rank_star)

  Matrix x_full() const { return basis_star * x * basis.adjoint(); }
  Matrix y_full() const { return basis * y * basis.adjoint(); }
};

struct Refusal {
  std::string reason;
  double residual = 0.0;
};

struct PreorderOutcome {
  std::optional<PreorderWitness> witness;
  std::optional<Refusal> refusal;
  bool ok() const { return witness.has_value(); }
};

// Decides a <= b by solving the two defining factorizations through the
// defects of b.  Shape mismatches and non-contractions throw; an order that
// fails to hold is reported as a refusal.
PreorderOutcome check_preceq(const Matrix& a, const Matrix& b,
                             const Tolerances& tol);

// Derived witness routes (each reproduces the direct solution; used to
// corroborate it).
Matrix y_from_x(const Matrix& x_compressed, const Contraction& b);
Matrix x_from_y(const Matrix& y_compressed, const Contraction& a,
                const Contraction& b, const Tolerances& tol);

// Certified segment radius r = 1/(||y|| + sqrt(||y||^2 + 2||Re y|| - 1)).
// An empty witness means the radius is unconstrained; the sentinel 1e300
// stands in for infinity (JSON cannot carry inf).
double radius_from_y(const Matrix& y_compressed);

// Samples the segment b + eps (a - b) on the circles |eps| = r and r/2 and
// reports the largest norm found.  n_samples >= 8 per circle.
struct SegmentReport {
  double max_norm = 0.0;
  cd argmax = 0.0;
  bool all_contractive = false;
  double radius = 0.0;
  int samples = 0;
};

SegmentReport segment_check(const Matrix& a, const Matrix& b, double r,
                            int n_samples, const Tolerances& tol);

// Both sides of the exact decomposition of I - t_eps* t_eps for
// t_eps = b + eps (a - b), with their mismatch.  The composed side uses only
// the defect grams and the metric term, no witness.
struct EpsilonDefect {
  Matrix direct;
  Matrix composed;
  double mismatch = 0.0;
};

EpsilonDefect epsilon_defect(const Matrix& a, const Matrix& b, cd eps);

// Witness data for mutual order, carried by the cross defect pairs.
// x_tilde: defect-of-b -> defect-of-a* coordinates; y_tilde: defect-of-b ->
// defect-of-a coordinates.
struct EquivWitness {
  Matrix x_tilde;
  Matrix y_tilde;
  PreorderWitness forward;   // a <= b
  PreorderWitness backward;  // b <= a
  Matrix derived_m;          // full coordinates, derived_m * d_b = d_a
  double residual_x_tilde = 0.0;
  double residual_y_tilde = 0.0;
  BoundReport bounds;
  Matrix basis_a, basis_a_star, basis_b, basis_b_star;
};

struct EquivOutcome {
  std::optional<EquivWitness> witness;
  std::optional<Refusal> refusal;
  bool ok() const { return witness.has_value(); }
};

EquivOutcome check_equiv(const Matrix& a, const Matrix& b,
                         const Tolerances& tol);

}  // namespace schur
