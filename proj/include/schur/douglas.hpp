#pragma once

#include <schur/types.hpp>

namespace schur {

// Solves z * s = t for the factor z that vanishes on the orthogonal
// complement of the range of s (the minimal-norm solution, z = t pinv(s)).
// Throws std::runtime_error if no exact factor exists, i.e. the residual
// ||t - z s|| exceeds tol.tol_residual * max(1, ||t||).
Matrix douglas_factor(const Matrix& t, const Matrix& s, const Tolerances& tol);

}  // namespace schur
