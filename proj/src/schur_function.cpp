#include <schur/numeric.hpp>
#include <schur/schur_function.hpp>

#include <cmath>
#include <random>
#include <sstream>

namespace schur {

namespace {

using detail::BlaschkeNode;
using detail::BlockNode;
using detail::ConstantNode;
using detail::DiagNode;
using detail::LftNode;
using detail::Node;
using detail::PolyNode;
using detail::RealizationNode;

constexpr double kBoundaryBand = 1e-12;
constexpr double kBallSlack = 1e-8;
constexpr double kCondCap = 1e12;

std::string lambda_str(cd lambda) {
  std::ostringstream os;
  os << lambda.real() << (lambda.imag() < 0 ? "" : "+") << lambda.imag()
     << "i";
  return os.str();
}

Matrix eval_node(const Node& n, cd lambda);

Matrix eval_lft(const LftNode& l, cd lambda) {
  Matrix p11 = l.parts[0].eval(lambda);
  Matrix p12 = l.parts[1].eval(lambda);
  Matrix p21 = l.parts[2].eval(lambda);
  Matrix p22 = l.parts[3].eval(lambda);
  Matrix f = l.parts[4].eval(lambda);
  Matrix t = Matrix::Identity(p11.rows(), p11.rows()) - p11 * f;
  Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  double smin = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
  if (smax == 0.0 || smin < smax / kCondCap)
    throw std::domain_error(
        "linear-fractional map undefined at lambda=" + lambda_str(lambda));
  Matrix tinv = svd.solve(Matrix::Identity(t.rows(), t.cols()));
  return p22 + p21 * f * tinv * p12;
}

Matrix eval_node(const Node& n, cd lambda) {
  if (const auto* c = std::get_if<ConstantNode>(&n.v)) return c->value;
  if (const auto* p = std::get_if<PolyNode>(&n.v)) {
    Matrix acc = Matrix::Zero(n.rows, n.cols);
    for (auto it = p->coeffs.rbegin(); it != p->coeffs.rend(); ++it)
      acc = (acc * lambda + *it).eval();
    return acc;
  }
  if (const auto* b = std::get_if<BlaschkeNode>(&n.v)) {
    cd num = b->omega - lambda;
    cd den = 1.0 - std::conj(b->omega) * lambda;
    Matrix m(1, 1);
    m(0, 0) = std::polar(1.0, -b->alpha) * num / den;
    return m;
  }
  if (const auto* d = std::get_if<DiagNode>(&n.v)) {
    Matrix m = Matrix::Zero(n.rows, n.cols);
    Index r = 0, c = 0;
    for (const auto& blk : d->blocks) {
      m.block(r, c, blk.rows(), blk.cols()) = blk.eval(lambda);
      r += blk.rows();
      c += blk.cols();
    }
    return m;
  }
  if (const auto* blk = std::get_if<BlockNode>(&n.v)) {
    Matrix m(n.rows, n.cols);
    Matrix v11 = blk->parts[0].eval(lambda);
    Matrix v12 = blk->parts[1].eval(lambda);
    Matrix v21 = blk->parts[2].eval(lambda);
    Matrix v22 = blk->parts[3].eval(lambda);
    m.topLeftCorner(v11.rows(), v11.cols()) = v11;
    m.topRightCorner(v12.rows(), v12.cols()) = v12;
    m.bottomLeftCorner(v21.rows(), v21.cols()) = v21;
    m.bottomRightCorner(v22.rows(), v22.cols()) = v22;
    return m;
  }
  if (const auto* r = std::get_if<RealizationNode>(&n.v)) {
    Index ns = r->a.rows();
    Matrix t = Matrix::Identity(ns, ns) - lambda * r->a;
    return r->d + lambda * (r->c * t.partialPivLu().solve(r->b));
  }
  return eval_lft(std::get<LftNode>(n.v), lambda);
}

// Shared validation sampler.  Interior points come from a fixed-seed
// generator so construction is reproducible; the rim ring sits at 0.99 and
// the boundary circle is only used when the formula extends to it.
void validate_ball(const Node& n, const char* what) {
  std::mt19937_64 gen(0x5eedf00dULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<cd> points;
  for (int i = 0; i < 20; ++i) {
    double rad = 0.99 * std::sqrt(unit(gen));
    double ang = 2.0 * M_PI * unit(gen);
    points.push_back(std::polar(rad, ang));
  }
  for (int k = 0; k < 16; ++k)
    points.push_back(std::polar(0.99, 2.0 * M_PI * k / 16.0));
  if (n.extendable)
    for (int k = 0; k < 64; ++k)
      points.push_back(std::polar(1.0, 2.0 * M_PI * k / 64.0));
  for (cd lambda : points) {
    double nv = op_norm(eval_node(n, lambda));
    if (!(nv <= 1.0 + kBallSlack))
      throw std::invalid_argument(std::string(what) +
                                  ": value exceeds the unit ball at lambda=" +
                                  lambda_str(lambda));
  }
}

SchurFunction wrap(Node&& n) {
  return SchurFunction(std::make_shared<const Node>(std::move(n)));
}

}  // namespace

Matrix SchurFunction::eval(cd lambda) const {
  if (!node_) throw std::runtime_error("evaluating an empty function");
  double mod = std::abs(lambda);
  if (mod > 1.0 + kBoundaryBand)
    throw std::invalid_argument("evaluation point outside the closed disk");
  if (mod >= 1.0 - kBoundaryBand && !node_->extendable)
    throw std::domain_error(
        "function does not extend to the boundary at lambda=" +
        lambda_str(lambda));
  return eval_node(*node_, lambda);
}

Index SchurFunction::rows() const {
  if (!node_) throw std::runtime_error("empty function");
  return node_->rows;
}

Index SchurFunction::cols() const {
  if (!node_) throw std::runtime_error("empty function");
  return node_->cols;
}

bool SchurFunction::extendable() const {
  if (!node_) throw std::runtime_error("empty function");
  return node_->extendable;
}

const detail::Node& SchurFunction::node() const {
  if (!node_) throw std::runtime_error("empty function");
  return *node_;
}

std::string SchurFunction::kind() const {
  if (!node_) throw std::runtime_error("empty function");
  struct Visitor {
    std::string operator()(const ConstantNode&) { return "const"; }
    std::string operator()(const PolyNode&) { return "poly"; }
    std::string operator()(const BlaschkeNode&) { return "blaschke"; }
    std::string operator()(const DiagNode&) { return "diag"; }
    std::string operator()(const BlockNode&) { return "block2x2"; }
    std::string operator()(const RealizationNode&) { return "realization"; }
    std::string operator()(const LftNode&) { return "lft"; }
  };
  return std::visit(Visitor{}, node_->v);
}

SchurFunction constant_fn(const Matrix& value) {
  if (value.size() == 0)
    throw std::invalid_argument("constant_fn: empty value");
  Node n;
  n.rows = value.rows();
  n.cols = value.cols();
  n.extendable = true;
  n.v = ConstantNode{value};
  validate_ball(n, "constant_fn");
  return wrap(std::move(n));
}

SchurFunction poly_fn(const std::vector<Matrix>& coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("poly_fn: no coefficients");
  for (const Matrix& c : coeffs)
    if (c.rows() != coeffs[0].rows() || c.cols() != coeffs[0].cols())
      throw std::invalid_argument("poly_fn: coefficient shapes differ");
  Node n;
  n.rows = coeffs[0].rows();
  n.cols = coeffs[0].cols();
  n.extendable = true;
  n.v = PolyNode{coeffs};
  validate_ball(n, "poly_fn");
  return wrap(std::move(n));
}

SchurFunction blaschke_fn(cd omega, double alpha) {
  if (!(std::abs(omega) < 1.0))
    throw std::invalid_argument("blaschke_fn: zero must lie inside the disk");
  Node n;
  n.rows = 1;
  n.cols = 1;
  n.extendable = true;
  n.v = BlaschkeNode{omega, alpha};
  validate_ball(n, "blaschke_fn");
  return wrap(std::move(n));
}

SchurFunction diag_fn(const std::vector<SchurFunction>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("diag_fn: no blocks");
  Node n;
  n.extendable = true;
  for (const auto& b : blocks) {
    if (!b.valid()) throw std::invalid_argument("diag_fn: empty block");
    n.rows += b.rows();
    n.cols += b.cols();
    n.extendable = n.extendable && b.extendable();
  }
  n.v = DiagNode{blocks};
  validate_ball(n, "diag_fn");
  return wrap(std::move(n));
}

SchurFunction block2x2_fn(const SchurFunction& f11, const SchurFunction& f12,
                          const SchurFunction& f21, const SchurFunction& f22) {
  for (const auto* f : {&f11, &f12, &f21, &f22})
    if (!f->valid()) throw std::invalid_argument("block2x2_fn: empty part");
  if (f11.rows() != f12.rows() || f21.rows() != f22.rows() ||
      f11.cols() != f21.cols() || f12.cols() != f22.cols())
    throw std::invalid_argument("block2x2_fn: block shapes do not tile");
  Node n;
  n.rows = f11.rows() + f21.rows();
  n.cols = f11.cols() + f12.cols();
  n.extendable = f11.extendable() && f12.extendable() && f21.extendable() &&
                 f22.extendable();
  n.v = BlockNode{{f11, f12, f21, f22}};
  validate_ball(n, "block2x2_fn");
  return wrap(std::move(n));
}

SchurFunction realization_fn(const Matrix& a, const Matrix& b, const Matrix& c,
                             const Matrix& d) {
  if (a.rows() != a.cols() || b.rows() != a.rows() || c.cols() != a.rows() ||
      d.rows() != c.rows() || d.cols() != b.cols())
    throw std::invalid_argument("realization_fn: incompatible shapes");
  double rho = 0.0;
  if (a.size() > 0) {
    Eigen::ComplexEigenSolver<Matrix> es(a, false);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("realization_fn: eigensolver failed");
    rho = es.eigenvalues().cwiseAbs().maxCoeff();
  }
  if (rho > 1.0 + 1e-12)
    throw std::invalid_argument(
        "realization_fn: state spectrum leaves the closed disk");
  Node n;
  n.rows = d.rows();
  n.cols = d.cols();
  n.extendable = rho < 1.0 - 1e-9;
  n.v = RealizationNode{a, b, c, d, rho};
  validate_ball(n, "realization_fn");
  return wrap(std::move(n));
}

SchurFunction lft_fn(const SchurFunction& phi11, const SchurFunction& phi12,
                     const SchurFunction& phi21, const SchurFunction& phi22,
                     const SchurFunction& f) {
  for (const auto* p : {&phi11, &phi12, &phi21, &phi22, &f})
    if (!p->valid()) throw std::invalid_argument("lft_fn: empty part");
  if (phi11.cols() != f.rows() || phi11.rows() != f.cols())
    throw std::invalid_argument("lft_fn: inner factor shapes do not chain");
  if (phi12.rows() != phi11.rows() || phi21.cols() != phi11.cols() ||
      phi22.rows() != phi21.rows() || phi22.cols() != phi12.cols())
    throw std::invalid_argument("lft_fn: coefficient shapes do not tile");
  Node n;
  n.rows = phi22.rows();
  n.cols = phi22.cols();
  n.extendable = phi11.extendable() && phi12.extendable() &&
                 phi21.extendable() && phi22.extendable() && f.extendable();
  n.v = LftNode{{phi11, phi12, phi21, phi22, f}};
  return wrap(std::move(n));
}

SamplingGrid SamplingGrid::standard() {
  SamplingGrid g;
  for (int j = 1; j <= 10; ++j) g.radii.push_back(1.0 - std::pow(2.0, -j));
  return g;
}

double sup_norm_estimate(const SchurFunction& f, const SamplingGrid& grid) {
  double sup = 0.0;
  for (double r : grid.radii)
    for (int k = 0; k < grid.angles; ++k) {
      cd lambda = std::polar(r, 2.0 * M_PI * k / grid.angles);
      sup = std::max(sup, op_norm(f.eval(lambda)));
    }
  if (f.extendable())
    for (int k = 0; k < grid.boundary_angles; ++k) {
      cd lambda = std::polar(1.0, 2.0 * M_PI * k / grid.boundary_angles);
      sup = std::max(sup, op_norm(f.eval(lambda)));
    }
  return sup;
}

}  // namespace schur
