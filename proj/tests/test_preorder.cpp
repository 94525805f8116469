#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <schur/numeric.hpp>
#include <schur/preorder.hpp>
#include <schur/sandwich.hpp>

#include "oracles.hpp"
#include "support.hpp"

using namespace schur;
using testsupport::random_contraction;
using testsupport::random_matrix;
using testsupport::random_with_norm;

namespace {
Matrix scalar(cd v) {
  Matrix m(1, 1);
  m(0, 0) = v;
  return m;
}

Matrix herm_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }
Matrix skew_part(const Matrix& m) { return (m - m.adjoint()) / cd(0, 2.0); }
}  // namespace

TEST_CASE("real-part defect identity holds for arbitrary contraction pairs") {
  for (unsigned seed : {201u, 202u, 203u}) {
    Matrix a = random_contraction(4, seed, 0.95);
    Matrix b = random_contraction(4, seed + 1000, 0.85);
    Matrix lhs = 2.0 * herm_part(Matrix::Identity(4, 4) - a.adjoint() * b);
    Matrix rhs = (Matrix::Identity(4, 4) - a.adjoint() * a) +
                 (Matrix::Identity(4, 4) - b.adjoint() * b) +
                 (a - b).adjoint() * (a - b);
    CHECK(op_norm(lhs - rhs) < 1e-12 * std::max(1.0, op_norm(lhs)));
  }
}

TEST_CASE("segment defect decomposition matches the direct computation") {
  for (unsigned seed : {211u, 212u}) {
    Matrix a = random_contraction(3, seed, 0.9);
    Matrix b = random_contraction(3, seed + 1000, 0.8);
    for (cd eps : {cd(0.3, 0.0), cd(-0.2, 0.4), cd(0.0, -1.1), cd(2.0, 0.5)}) {
      EpsilonDefect ed = epsilon_defect(a, b, eps);
      CHECK(ed.mismatch < 1e-11);
      Matrix t = b + eps * (a - b);
      CHECK(op_norm(ed.direct -
                    (Matrix::Identity(3, 3) - t.adjoint() * t)) < 1e-12);
      // Recompute the composed side from scratch.
      Matrix metric = Matrix::Identity(3, 3) - a.adjoint() * b;
      Matrix composed =
          (1.0 - 2.0 * eps.real()) *
              (Matrix::Identity(3, 3) - b.adjoint() * b) +
          2.0 * eps.real() * herm_part(metric) +
          2.0 * eps.imag() * skew_part(metric) -
          std::norm(eps) * (a - b).adjoint() * (a - b);
      CHECK(op_norm(ed.composed - composed) < 1e-12);
    }
  }
}

TEST_CASE("frozen scalar pair: witnesses, radius, derived routes") {
  Matrix a = scalar(0.3), b = scalar(0.6);
  PreorderOutcome out = check_preceq(a, b, Tolerances{});
  REQUIRE(out.ok());
  const PreorderWitness& w = *out.witness;

  // a - b = -0.3 = 0.64 x  =>  x = -0.46875
  CHECK(std::abs(w.x(0, 0) - cd(-0.46875)) < 1e-12);
  // 1 - a b = 0.82 = 0.64 y  =>  y = 1.28125
  CHECK(std::abs(w.y(0, 0) - cd(1.28125)) < 1e-12);
  CHECK(w.min_eig_2re_y_minus_i == doctest::Approx(1.5625).epsilon(1e-12));
  CHECK(w.residual_x < 1e-12);
  CHECK(w.residual_y < 1e-12);

  double ny = 1.28125;
  double expect_r = 1.0 / (ny + std::sqrt(ny * ny + 1.5625));
  CHECK(w.r == doctest::Approx(expect_r).epsilon(1e-12));

  // All norm bounds hold (the defect-supported witness is unique, so it is
  // the one the bounds speak about).
  for (const BoundEntry& e : w.bounds.entries) {
    INFO(e.name);
    CHECK(e.pass);
  }

  // Derived routes reproduce the direct solutions.
  Contraction cb = make_contraction(b, Tolerances{});
  Matrix y2 = y_from_x(w.x, cb);
  CHECK(op_norm(y2 - w.y) < 1e-12);
  Contraction ca = make_contraction(a, Tolerances{});
  Matrix x2 = x_from_y(w.y, ca, cb, Tolerances{});
  CHECK(op_norm(x2 - w.x) < 1e-10);

  // Expanded witnesses reproduce the defining identities.
  CHECK(op_norm(cb.defects.d_star * w.x_full() * cb.defects.d - (a - b)) <
        1e-12);
  CHECK(op_norm(cb.defects.d * w.y_full() * cb.defects.d -
                (Matrix::Identity(1, 1) - a.adjoint() * b)) < 1e-12);
}

TEST_CASE("frozen scalar pair: certified segment radius and a failing one") {
  Matrix a = scalar(0.3), b = scalar(0.6);
  PreorderOutcome out = check_preceq(a, b, Tolerances{});
  REQUIRE(out.ok());

  SegmentReport ok = segment_check(a, b, out.witness->r, 64, Tolerances{});
  CHECK(ok.all_contractive);
  CHECK(ok.max_norm <= 1.0 + 1e-12);

  // The segment b + eps (a-b) = 0.6 - 0.3 eps leaves the ball once
  // |eps| > 4/3; the circle of radius 1.4 must be caught.
  SegmentReport bad = segment_check(a, b, 1.4, 64, Tolerances{});
  CHECK_FALSE(bad.all_contractive);
  CHECK(bad.max_norm == doctest::Approx(0.6 + 0.3 * 1.4).epsilon(1e-12));
  CHECK(std::abs(bad.argmax - cd(-1.4, 0.0)) < 1e-9);

  CHECK_THROWS_AS(segment_check(a, b, 0.5, 4, Tolerances{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(segment_check(a, b, -0.1, 64, Tolerances{}),
                  std::invalid_argument);
}

TEST_CASE("reflexive pair has zero difference witness and fixed radius") {
  Matrix b = random_contraction(3, 221u, 0.85);
  PreorderOutcome out = check_preceq(b, b, Tolerances{});
  REQUIRE(out.ok());
  CHECK(op_norm(out.witness->x) < 1e-12);
  CHECK(op_norm(out.witness->y - Matrix::Identity(3, 3)) < 1e-10);
  // y = I gives r = 1/(1 + sqrt(2)).
  CHECK(out.witness->r ==
        doctest::Approx(1.0 / (1.0 + std::sqrt(2.0))).epsilon(1e-9));
}

TEST_CASE("strict target orders every contraction above it") {
  for (unsigned seed : {231u, 232u, 233u}) {
    Matrix a = random_contraction(3, seed, 0.99);
    Matrix b = random_contraction(3, seed + 1000, 0.8);
    PreorderOutcome out = check_preceq(a, b, Tolerances{});
    REQUIRE(out.ok());
    const PreorderWitness& w = *out.witness;
    CHECK(w.residual_x < 1e-8);
    CHECK(w.residual_y < 1e-8);
    CHECK(w.min_eig_2re_y_minus_i > -1e-10);
    for (const BoundEntry& e : w.bounds.entries) {
      INFO(e.name);
      CHECK(e.pass);
    }
    // The certified radius really certifies the segment.
    SegmentReport seg = segment_check(a, b, w.r, 64, Tolerances{});
    CHECK(seg.all_contractive);
  }
}

TEST_CASE("unitary target: equality passes vacuously, inequality refuses") {
  Matrix u = Matrix::Identity(2, 2);
  PreorderOutcome eq = check_preceq(u, u, Tolerances{});
  REQUIRE(eq.ok());
  CHECK(eq.witness->x.size() == 0);
  CHECK(eq.witness->y.size() == 0);
  CHECK(eq.witness->r >= 1e299);  // unbounded radius sentinel

  Matrix a = scalar(0.5);
  Matrix one = scalar(1.0);
  PreorderOutcome ref = check_preceq(a, one, Tolerances{});
  CHECK_FALSE(ref.ok());
  REQUIRE(ref.refusal.has_value());
  CHECK(ref.refusal->residual > 0.1);
}

TEST_CASE("boundary target with partial defect still orders structured pairs") {
  Matrix b = Matrix::Zero(2, 2);
  b(0, 0) = 1.0;
  b(1, 1) = 0.6;
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 0.3;
  PreorderOutcome out = check_preceq(a, b, Tolerances{});
  REQUIRE(out.ok());
  CHECK(out.witness->x.rows() == 1);
  CHECK(out.witness->x.cols() == 1);
  CHECK(std::abs(out.witness->x(0, 0) - cd(-0.46875)) < 1e-12);
  CHECK(std::abs(out.witness->y(0, 0) - cd(1.28125)) < 1e-12);

  // Rotating the isometric part keeps a contraction but moves the
  // difference out of the defect range.
  double t = 0.1;
  Matrix rot(2, 2);
  rot << cd(std::cos(t)), cd(-std::sin(t)), cd(std::sin(t)), cd(std::cos(t));
  Matrix a2 = rot * a;
  PreorderOutcome ref = check_preceq(a2, b, Tolerances{});
  CHECK_FALSE(ref.ok());
}

TEST_CASE("shape and contraction validation") {
  CHECK_THROWS_AS(
      check_preceq(random_matrix(2, 2, 241u), random_matrix(3, 3, 242u),
                   Tolerances{}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      check_preceq(random_with_norm(2, 2, 1.2, 243u), scalar(0.5) * Matrix::Identity(2, 2),
                   Tolerances{}),
      std::invalid_argument);
}

TEST_CASE("metric witness agrees across independent construction routes") {
  for (unsigned seed : {251u, 252u}) {
    Matrix a = random_contraction(3, seed, 0.95);
    Matrix b = random_contraction(3, seed + 1000, 0.75);
    PreorderOutcome out = check_preceq(a, b, Tolerances{});
    REQUIRE(out.ok());
    const PreorderWitness& w = *out.witness;
    Contraction cb = make_contraction(b, Tolerances{});

    // Route 2: domination bisection on the metric term.
    Matrix metric = Matrix::Identity(3, 3) - a.adjoint() * b;
    ComplexWitness route2 =
        complex_sandwich_witness(metric, cb.defects.d, Tolerances{});
    REQUIRE(route2.accepted);
    Matrix z_c = cb.defects.basis.adjoint() * route2.z * cb.defects.basis;
    CHECK(op_norm(z_c - w.y) < 1e-6);

    // Route 3: metric witness derived from the difference witness.
    CHECK(op_norm(y_from_x(w.x, cb) - w.y) < 1e-9);

    // Route 4: difference witness rebuilt from the metric witness.
    Contraction ca = make_contraction(a, Tolerances{});
    CHECK(op_norm(x_from_y(w.y, ca, cb, Tolerances{}) - w.x) < 1e-7);

    // Oracle route: vectorized least squares on the compressed system.
    Matrix x_oracle = oracle::kron_least_squares(a - b, cb.defects.d_star,
                                                 cb.defects.d);
    Matrix x_oracle_c =
        cb.defects.basis_star.adjoint() * x_oracle * cb.defects.basis;
    CHECK(op_norm(x_oracle_c - w.x) < 1e-7);
  }
}

TEST_CASE("frozen scalar equivalence: cross witnesses and all norm bounds") {
  Matrix a = scalar(0.3), b = scalar(0.6);
  EquivOutcome out = check_equiv(a, b, Tolerances{});
  REQUIRE(out.ok());
  const EquivWitness& w = *out.witness;

  double da = std::sqrt(0.91), db = 0.8;
  CHECK(std::abs(w.x_tilde(0, 0) - cd(-0.3 / (da * db))) < 1e-12);
  CHECK(std::abs(w.y_tilde(0, 0) - cd(0.82 / (da * db))) < 1e-12);
  CHECK(std::abs(w.derived_m(0, 0) - cd(da / db)) < 1e-12);

  REQUIRE(w.bounds.entries.size() == 8);
  for (const BoundEntry& e : w.bounds.entries) {
    INFO(e.name);
    CHECK(e.pass);
  }

  // Forward and backward witnesses embedded in the result are the direct
  // ones.
  CHECK(std::abs(w.forward.x(0, 0) - cd(-0.46875)) < 1e-12);
  CHECK(std::abs(w.backward.x(0, 0) - cd(0.3 / 0.91)) < 1e-12);
}

TEST_CASE("equivalence on random strict pairs: bounds and factor residuals") {
  for (unsigned seed : {261u, 262u, 263u}) {
    Matrix a = random_contraction(3, seed, 0.9);
    Matrix b = random_contraction(3, seed + 1000, 0.7);
    EquivOutcome out = check_equiv(a, b, Tolerances{});
    REQUIRE(out.ok());
    const EquivWitness& w = *out.witness;
    CHECK(w.residual_x_tilde < 1e-8);
    CHECK(w.residual_y_tilde < 1e-8);
    for (const BoundEntry& e : w.bounds.entries) {
      INFO(e.name);
      CHECK(e.pass);
    }
    Contraction ca = make_contraction(a, Tolerances{});
    Contraction cb = make_contraction(b, Tolerances{});
    CHECK(op_norm(w.derived_m * cb.defects.d - ca.defects.d) < 1e-8);
    // Expanded cross witnesses satisfy their defining identities.
    Matrix xt_full = ca.defects.basis_star * w.x_tilde *
                     cb.defects.basis.adjoint();
    CHECK(op_norm(ca.defects.d_star * xt_full * cb.defects.d - (a - b)) <
          1e-8);
    Matrix yt_full = ca.defects.basis * w.y_tilde * cb.defects.basis.adjoint();
    CHECK(op_norm(ca.defects.d * yt_full * cb.defects.d -
                  (Matrix::Identity(3, 3) - a.adjoint() * b)) < 1e-8);
  }
}

TEST_CASE("one-sided order is not equivalence") {
  // b sits on the boundary with a nontrivial isometric part; a is strict.
  Matrix b = Matrix::Zero(2, 2);
  b(0, 0) = 1.0;
  b(1, 1) = 0.5;
  Matrix a = random_contraction(2, 271u, 0.6);

  PreorderOutcome fwd = check_preceq(b, a, Tolerances{});
  CHECK(fwd.ok());  // strict target accepts anything
  PreorderOutcome bwd = check_preceq(a, b, Tolerances{});
  CHECK_FALSE(bwd.ok());

  EquivOutcome eq = check_equiv(a, b, Tolerances{});
  CHECK_FALSE(eq.ok());
  REQUIRE(eq.refusal.has_value());
}

TEST_CASE("radius formula degrades gracefully on vacuous witnesses") {
  Matrix empty;
  CHECK(radius_from_y(empty) >= 1e299);
  Matrix y = scalar(1.28125);
  double expect =
      1.0 / (1.28125 + std::sqrt(1.28125 * 1.28125 + 2 * 1.28125 - 1));
  CHECK(radius_from_y(y) == doctest::Approx(expect).epsilon(1e-12));
}
