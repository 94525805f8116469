#pragma once

#include <schur/numeric.hpp>
#include <schur/types.hpp>

namespace schur {

// A validated contraction bundled with its defect data.
struct Contraction {
  Matrix matrix;
  DefectPair defects;
  double norm = 0.0;
};

// Throws std::invalid_argument when op_norm exceeds 1 + tol.tol_residual.
Contraction make_contraction(const Matrix& m, const Tolerances& tol);

enum class ContractionKind {
  strict,            // norm bounded away from 1
  isometry,          // full domain defect rank 0 only
  co_isometry,       // full codomain defect rank 0 only
  unitary,           // both defect ranks 0
  boundary_generic,  // norm at 1 but neither defect degenerates fully
};

struct Classification {
  ContractionKind kind = ContractionKind::strict;
  double margin = 0.0;  // 1 - norm
};

// Rank-based kinds take precedence; otherwise strict iff norm <= 1 -
// class_tol.
Classification classify(const Contraction& c, double class_tol = 1e-9);

}  // namespace schur
