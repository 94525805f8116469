#pragma once

#include <functional>
#include <string>
#include <vector>

#include <schur/profile.hpp>
#include <schur/types.hpp>

namespace schur {

using MatrixFn = std::function<Matrix(cd)>;

enum class TailVerdict { convergent, oscillating, inconclusive };
std::string to_string(TailVerdict v);

struct ContinuityRow {
  cd lambda;
  double norm_w = 0.0;
  double delta = 0.0;     // max basis displacement against the endpoint factor
  double residual = 0.0;  // relative residual of W v = u at this sample
};

// Tail analysis over the final samples (endpoint row excluded: its delta is
// zero by construction): convergent when the last deltas sit below conv_tol
// and the tail swing stays under osc_tol; oscillating when the swing
// reaches osc_tol; inconclusive otherwise.
struct ContinuityReport {
  std::vector<ContinuityRow> rows;
  double sup_w = 0.0;
  double min_majorization_eig = 0.0;  // min over samples of eig(v*v - u*u)
  TailVerdict tail = TailVerdict::inconclusive;
  double tail_oscillation = 0.0;
  double conv_tol = 0.0;
  double osc_tol = 0.0;
};

// Solves W_t v(lambda_t) = u(lambda_t) at every curve sample and compares
// each factor against the endpoint factor on a range basis of v at the
// endpoint. Factor domination u*u <= v*v is validated per sample; a
// violation is an input error.
ContinuityReport continuity_probe(const MatrixFn& u_fn, const MatrixFn& v_fn,
                                  const CurveSpec& curve, const Tolerances& tol,
                                  double conv_tol = 1e-6, double osc_tol = 0.1);

// A factor pair on the closed disc whose pointwise Douglas factor extends
// continuously everywhere except the boundary point 1, where it oscillates:
// u = Z^T diag(1, phi) D Z and v = Z^T D Z share the frame Z diagonalizing
// v, and the weight phi(lambda) = sin^2(1/(1 - Re lambda)) has no limit as
// lambda -> 1 along the real axis.
struct BoundaryDiscontinuityExample {
  MatrixFn u_fn;
  MatrixFn v_fn;
  MatrixFn w_formula;  // closed-form factor Z^T diag(1, phi) Z
  std::function<double(cd)> oscillator;
};

BoundaryDiscontinuityExample make_boundary_discontinuity_example();

}  // namespace schur
