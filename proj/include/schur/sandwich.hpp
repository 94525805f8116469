#pragma once

#include <schur/types.hpp>

namespace schur {

// Minimal-norm solution q of  p = m_left * q * n_right  via pseudoinverses.
// Unsolvable systems are reported through `accepted`, never thrown: the
// caller decides whether an inexact sandwich is a refusal or an error.
struct SandwichResult {
  Matrix q;
  double residual = 0.0;  // ||m_left q n_right - p|| / max(1, ||p||)
  bool accepted = false;
};

SandwichResult sandwich_solve(const Matrix& p, const Matrix& m_left,
                              const Matrix& n_right, const Tolerances& tol);

// Hermitian witness w with  u = d w d, built constructively from the
// domination  -delta d^2 <= u <= delta d^2:  delta is minimized by bisection,
// u is split into positive/negative parts, each part's square root is
// factored through sqrt(delta) d, and w is assembled from those factors.
// If no delta up to the cap dominates, `accepted` is false.
struct HermitianWitness {
  Matrix w;
  double delta = 0.0;
  double residual = 0.0;
  bool accepted = false;
};

HermitianWitness hermitian_sandwich_witness(const Matrix& u, const Matrix& d,
                                            const Tolerances& tol);

// Same construction applied to the hermitian and anti-hermitian parts of a
// general u; z = w_re + i w_im.  Kept deliberately independent of
// sandwich_solve so the two routes can corroborate each other.
struct ComplexWitness {
  Matrix z;
  double delta_re = 0.0;
  double delta_im = 0.0;
  double residual = 0.0;
  bool accepted = false;
};

ComplexWitness complex_sandwich_witness(const Matrix& u, const Matrix& d,
                                        const Tolerances& tol);

}  // namespace schur
