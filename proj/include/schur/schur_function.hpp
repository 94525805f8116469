#pragma once

#include <schur/types.hpp>

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace schur {

class SchurFunction;

namespace detail {

struct ConstantNode {
  Matrix value;
};

// coeffs[k] multiplies lambda^k.
struct PolyNode {
  std::vector<Matrix> coeffs;
};

// Scalar inner factor e^{-i alpha} (omega - lambda) / (1 - conj(omega)
// lambda), |omega| < 1.
struct BlaschkeNode {
  cd omega;
  double alpha = 0.0;
};

struct DiagNode {
  std::vector<SchurFunction> blocks;
};

// parts = {f11, f12, f21, f22}, assembled row-wise.
struct BlockNode {
  std::vector<SchurFunction> parts;
};

// lambda -> d + lambda c (I - lambda a)^{-1} b.
struct RealizationNode {
  Matrix a, b, c, d;
  double spectral_radius = 0.0;
};

// lambda -> phi22 + phi21 f (I - phi11 f)^{-1} phi12.
struct LftNode {
  std::vector<SchurFunction> parts;  // {phi11, phi12, phi21, phi22, f}
};

struct Node {
  std::variant<ConstantNode, PolyNode, BlaschkeNode, DiagNode, BlockNode,
               RealizationNode, LftNode>
      v;
  Index rows = 0;
  Index cols = 0;
  bool extendable = false;
};

}  // namespace detail

// An analytic function on the unit disk with contractive values, represented
// structurally so evaluation is exact (no interpolation).  Values are
// matrices mapping cols() inputs to rows() outputs.  `extendable` marks
// functions whose defining formula stays valid on the closed disk; only
// those may be evaluated at |lambda| = 1.
class SchurFunction {
 public:
  SchurFunction() = default;

  Matrix eval(cd lambda) const;
  Index rows() const;
  Index cols() const;
  bool extendable() const;
  std::string kind() const;
  bool valid() const { return node_ != nullptr; }
  const detail::Node& node() const;

  explicit SchurFunction(std::shared_ptr<const detail::Node> n)
      : node_(std::move(n)) {}

 private:
  std::shared_ptr<const detail::Node> node_;
};

// Factories validate membership in the unit ball by sampling: fixed interior
// points, a ring near the rim, and the boundary circle when the formula
// extends there.  Violations throw std::invalid_argument.  The
// linear-fractional factory checks shapes only; its callers validate values
// on their own grids.
SchurFunction constant_fn(const Matrix& value);
SchurFunction poly_fn(const std::vector<Matrix>& coeffs);
SchurFunction blaschke_fn(cd omega, double alpha);
SchurFunction diag_fn(const std::vector<SchurFunction>& blocks);
SchurFunction block2x2_fn(const SchurFunction& f11, const SchurFunction& f12,
                          const SchurFunction& f21, const SchurFunction& f22);
SchurFunction realization_fn(const Matrix& a, const Matrix& b, const Matrix& c,
                             const Matrix& d);
SchurFunction lft_fn(const SchurFunction& phi11, const SchurFunction& phi12,
                     const SchurFunction& phi21, const SchurFunction& phi22,
                     const SchurFunction& f);

// Radial-dyadic sampling grid shared by the sweep-based checks: radii
// 1 - 2^-j for j = 1..10, a fixed angle count per circle, and a denser
// boundary circle.
struct SamplingGrid {
  std::vector<double> radii;
  int angles = 64;
  int boundary_angles = 256;
  static SamplingGrid standard();
};

// Largest value norm over the grid (plus the boundary circle when the
// function extends there).
double sup_norm_estimate(const SchurFunction& f, const SamplingGrid& grid);

}  // namespace schur
