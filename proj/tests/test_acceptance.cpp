// Acceptance suite: one checked criterion per test case, each reporting a
// single [PASS]/[FAIL] line with its measured extremes and runtime. The
// tolerances printed here are the contract; they are asserted, not logged.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <schur/continuity.hpp>
#include <schur/numeric.hpp>
#include <schur/preorder.hpp>
#include <schur/profile.hpp>
#include <schur/redheffer.hpp>
#include <schur/sandwich.hpp>
#include <schur/schur_function.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "support.hpp"

using namespace schur;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Prints the per-criterion verdict line and folds the runtime limit into it.
bool finish(const char* label, bool pass, Clock::time_point t0, double limit_s,
            const std::string& detail) {
  const double secs = seconds_since(t0);
  const bool ok = pass && secs < limit_s;
  std::printf("[%s] %s -- %s (%.2f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", label,
              detail.c_str(), secs, limit_s);
  std::fflush(stdout);
  return ok;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

SchurFunction coordinate_symbol(Index n) {
  // G(lambda) = lambda I as a degree-1 polynomial.
  return poly_fn({Matrix::Zero(n, n), Matrix::Identity(n, n)});
}

SchurFunction scaled_coordinate(Index n, double scale) {
  return poly_fn({Matrix::Zero(n, n), scale * Matrix::Identity(n, n)});
}

RedhefferCoefficients random_constant_phi(Index half, unsigned seed) {
  const Matrix m = testsupport::random_with_norm(2 * half, 2 * half, 0.9, seed);
  return make_redheffer_coefficients(constant_fn(m.topLeftCorner(half, half)),
                                     constant_fn(m.topRightCorner(half, half)),
                                     constant_fn(m.bottomLeftCorner(half, half)),
                                     constant_fn(m.bottomRightCorner(half, half)));
}

SamplingGrid deep_grid() {
  // Standard rings plus three more dyadic steps: rational witness profiles
  // flatten geometrically, and the boundedness gate needs the quiet tail.
  SamplingGrid grid = SamplingGrid::standard();
  for (int j = 11; j <= 13; ++j) grid.radii.push_back(1.0 - std::ldexp(1.0, -j));
  return grid;
}

std::vector<double> dyadic_deltas(int count) {
  std::vector<double> deltas;
  for (int j = 1; j <= count; ++j) deltas.push_back(1.0 - std::ldexp(1.0, -j));
  return deltas;
}

}  // namespace

TEST_CASE("defect decomposition of segment points is exact") {
  const auto t0 = Clock::now();
  const Tolerances tol;
  double max_mismatch = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Index n = 1 + i % 6;
    const Matrix a = testsupport::random_with_norm(n, n, 0.6 + 0.4 * ((i * 7) % 11) / 10.0,
                                                   unsigned(1000 + i));
    const Matrix b = testsupport::random_with_norm(n, n, 0.5 + 0.5 * ((i * 3) % 11) / 10.0,
                                                   unsigned(2000 + i));
    const cd eps = std::polar(0.95 * ((i % 10) + 1) / 10.0, 0.39 * i);
    max_mismatch = std::max(max_mismatch, epsilon_defect(a, b, eps).mismatch);
  }
  (void)tol;
  CHECK(finish("segment defect identity, 100 random pairs (dims 1-6)",
               max_mismatch <= 1e-10, t0, 1.0, "max residual " + fmt(max_mismatch)));
}

TEST_CASE("witness pipeline on strictly dominated random pairs") {
  const auto t0 = Clock::now();
  const Tolerances tol;
  bool all_ok = true;
  double max_residual = 0.0, min_metric_eig = 1e300;
  for (int i = 0; i < 200 && all_ok; ++i) {
    const Index n = 1 + i % 5;
    const Matrix a = testsupport::random_with_norm(n, n, 0.2 + 0.8 * ((i * 5) % 11) / 10.0,
                                                   unsigned(3000 + i));
    const Matrix b = testsupport::random_with_norm(n, n, 0.9 * ((i % 9) + 1) / 9.0,
                                                   unsigned(4000 + i));
    const auto outcome = check_preceq(a, b, tol);
    if (!outcome.ok()) {
      all_ok = false;
      break;
    }
    const auto& w = *outcome.witness;
    max_residual = std::max({max_residual, w.residual_x, w.residual_y});
    min_metric_eig = std::min(min_metric_eig, w.min_eig_2re_y_minus_i);
    if (!w.bounds.all_pass()) all_ok = false;
    const auto seg = segment_check(a, b, w.r, 64, tol);
    if (!seg.all_contractive) all_ok = false;
  }
  const bool pass = all_ok && max_residual <= 1e-8 && min_metric_eig >= -1e-8;
  CHECK(finish("witness pipeline, 200 random pairs with strict dominator",
               pass, t0, 5.0,
               "max residual " + fmt(max_residual) + ", min metric eig " +
                   fmt(min_metric_eig)));
}

TEST_CASE("strict contractions dominate; isometries admit no other dominator") {
  const auto t0 = Clock::now();
  const Tolerances tol;

  bool strict_dominates = true;
  for (int i = 0; i < 50; ++i) {
    const Index n = 1 + i % 5;
    const Matrix a = testsupport::random_with_norm(n, n, 1.0, unsigned(5000 + i));
    const Matrix b = testsupport::random_with_norm(n, n, 0.85, unsigned(6000 + i));
    if (!check_preceq(a, b, tol).ok()) strict_dominates = false;
  }

  // An isometry has a vanishing defect, so the only contraction it can sit
  // above in the order is itself: every perturbed candidate must be refused.
  const Matrix iso = testsupport::random_unitary(3, 77).leftCols(2);
  bool self_ok = check_preceq(iso, iso, tol).ok();
  bool none_below = true;
  double min_distance = 1e300;
  for (int i = 0; i < 50; ++i) {
    const Matrix e = testsupport::random_with_norm(3, 2, 0.05, unsigned(7000 + i));
    Matrix cand = iso + e;
    const double norm = op_norm(cand);
    if (norm > 1.0) cand /= norm;
    const double dist = op_norm(cand - iso);
    min_distance = std::min(min_distance, dist);
    REQUIRE(dist >= 1e-3);
    if (check_preceq(cand, iso, tol).ok()) none_below = false;
  }

  CHECK(finish("strict dominators (50 pairs) and isolated 3x2 isometry (50 candidates)",
               strict_dominates && self_ok && none_below, t0, 2.0,
               "min candidate distance " + fmt(min_distance)));
}

TEST_CASE("scalar pair (0, lambda): pointwise order with divergent witness norms") {
  const auto t0 = Clock::now();
  const Tolerances tol;
  const SchurFunction f = constant_fn(Matrix::Zero(1, 1));
  const SchurFunction g = coordinate_symbol(1);

  const auto point = check_preceq(f.eval(0.9), g.eval(0.9), tol);
  const bool point_ok =
      point.ok() && std::abs(point.witness->x_full()(0, 0) - cd(-0.9 / 0.19, 0.0)) <= 1e-10;

  const auto profile = pointwise_witness_profile(f, g, SamplingGrid::standard(), tol);
  double min_ratio = profile.growth_ratios.empty() ? 0.0 : 1e300;
  for (double r : profile.growth_ratios) min_ratio = std::min(min_ratio, r);
  const bool profile_ok =
      profile.classification == ProfileClass::diverging && min_ratio >= 1.5;

  CHECK(finish("divergent scalar counterexample (witness at 0.9, ring growth)",
               point_ok && profile_ok, t0, 1.0,
               "witness error " + fmt(point.ok() ? std::abs(point.witness->x_full()(0, 0) -
                                                            cd(-0.9 / 0.19, 0.0))
                                                 : 1e300) +
                   ", min ring ratio " + fmt(min_ratio)));
}

TEST_CASE("distinct inner factors: comparable pointwise, equivalent only to themselves") {
  const auto t0 = Clock::now();
  const Tolerances tol;
  const SchurFunction b3 = blaschke_fn(cd(0.3, 0.0), 0.0);
  const SchurFunction b5 = blaschke_fn(cd(0.5, 0.0), 0.0);
  const SamplingGrid grid = SamplingGrid::standard();

  const auto fwd = pointwise_witness_profile(b3, b5, grid, tol);
  const auto bwd = pointwise_witness_profile(b5, b3, grid, tol);
  const bool comparable =
      !fwd.refusal_lambda.has_value() && !bwd.refusal_lambda.has_value();

  const auto distinct = classify_equiv_infty(b3, b5, grid, tol);
  const auto same = classify_equiv_infty(b3, b3, grid, tol);
  const bool pass = comparable && distinct.verdict == FnVerdict::refuted_diverging &&
                    same.verdict == FnVerdict::supported;
  CHECK(finish("inequivalent inner pair (pointwise order, global refutation)", pass, t0,
               2.0,
               "cross sup " + fmt(distinct.sup_q_tilde) + ", distinct verdict " +
                   to_string(distinct.verdict) + ", identical verdict " +
                   to_string(same.verdict)));
}

TEST_CASE("pointwise factor: boundary limit along one curve, oscillation along another") {
  const auto t0 = Clock::now();
  const Tolerances tol;
  const auto ex = make_boundary_discontinuity_example();

  const auto to_i =
      continuity_probe(ex.u_fn, ex.v_fn, CurveSpec::radial(cd(0.0, 1.0), 48, false), tol);
  double tail_delta = 0.0;
  const std::size_t n_rows = to_i.rows.size();
  for (std::size_t i = (n_rows >= 4 ? n_rows - 4 : 0); i + 1 < n_rows; ++i)
    tail_delta = std::max(tail_delta, to_i.rows[i].delta);
  const bool converges = to_i.tail == TailVerdict::convergent && tail_delta <= 1e-6;

  std::vector<cd> axis;
  double min_amp = 1e300;
  for (int n = 3; n <= 8; ++n) {
    const cd lo(1.0 - 1.0 / (n * M_PI), 0.0);
    const cd hi(1.0 - 2.0 / ((2 * n + 1) * M_PI), 0.0);
    axis.push_back(lo);
    axis.push_back(hi);
    min_amp = std::min(min_amp, op_norm(ex.w_formula(lo) - ex.w_formula(hi)));
  }
  const auto real_axis = continuity_probe(ex.u_fn, ex.v_fn, CurveSpec::through(axis), tol);
  const bool oscillates =
      real_axis.tail == TailVerdict::oscillating && real_axis.tail_oscillation >= 0.5;

  CHECK(finish("boundary factor: convergent at i, oscillating toward 1",
               converges && oscillates && min_amp >= 0.5, t0, 1.0,
               "tail delta " + fmt(tail_delta) + ", swing " +
                   fmt(real_axis.tail_oscillation) + ", family gap " + fmt(min_amp)));
}

TEST_CASE("image difference identity and defect inequalities across the grid") {
  const auto t0 = Clock::now();
  const Tolerances tol;
  SamplingGrid grid;
  grid.radii = {0.5, 0.875, 0.984375};
  grid.angles = 16;
  grid.boundary_angles = 64;

  double max_diff_residual = 0.0;
  double min_eig = 1e300;
  for (int i = 0; i < 50; ++i) {
    const Index half = 1 + i % 2;
    const auto phi = random_constant_phi(half, unsigned(8000 + i));
    const Matrix k1v = testsupport::random_with_norm(half, half, 0.8, unsigned(8100 + i));
    const Matrix k2v = testsupport::random_with_norm(half, half, 0.7, unsigned(8200 + i));
    const SchurFunction k1 = constant_fn(k1v), k2 = constant_fn(k2v);
    max_diff_residual =
        std::max(max_diff_residual, difference_residual(phi, k1, k2, grid, tol).max_residual);
    const auto defects = defect_inequality_check(phi, k1, grid, tol);
    min_eig = std::min({min_eig, defects.min_eig_domain, defects.min_eig_range});
  }

  // Stacked-mode truncations: nonconstant input, and the boundary equality
  // that only two-sided-inner coefficients achieve.
  bool mode_ok = true;
  double max_boundary_gap = 0.0;
  for (int len = 1; len <= 4; ++len) {
    const auto ex = make_diagonal_mode_example(dyadic_deltas(len));
    max_diff_residual = std::max(
        max_diff_residual, difference_residual(ex.phi, ex.f1, ex.f2, grid, tol).max_residual);
    const auto defects = defect_inequality_check(ex.phi, ex.f2, grid, tol);
    min_eig = std::min({min_eig, defects.min_eig_domain, defects.min_eig_range});
    if (!(defects.boundary_checked && defects.boundary_equality)) mode_ok = false;
    max_boundary_gap = std::max(max_boundary_gap, defects.max_boundary_gap);
  }

  const bool pass = max_diff_residual <= 1e-10 && min_eig >= -1e-9 && mode_ok &&
                    max_boundary_gap <= 1e-6;
  CHECK(finish("image difference (50 random + stacked modes) and defect inequalities",
               pass, t0, 10.0,
               "max residual " + fmt(max_diff_residual) + ", min eig " + fmt(min_eig) +
                   ", boundary gap " + fmt(max_boundary_gap)));
}

TEST_CASE("equivalence witnesses transport with non-expanding sup") {
  const auto t0 = Clock::now();
  const Tolerances tol;
  const SamplingGrid constant_grid = SamplingGrid::standard();
  const SamplingGrid rational_grid = deep_grid();

  int transported = 0;
  double max_residual = 0.0, max_sup_excess = -1e300;
  bool symmetric = true;

  auto run_one = [&](const RedhefferCoefficients& phi, const SchurFunction& f1,
                     const SchurFunction& f2, const SamplingGrid& grid) {
    const auto outcome = transport_equiv(phi, f1, f2, grid, tol);
    REQUIRE_MESSAGE(outcome.ok(), (outcome.refusal ? outcome.refusal->reason : std::string()));
    const auto& cert = *outcome.certificate;
    ++transported;
    max_residual = std::max(max_residual, cert.max_residual);
    max_sup_excess =
        std::max(max_sup_excess, cert.sup_transported - cert.input_witness_sup);
    symmetric = symmetric && cert.domain_symmetric && cert.pass;
  };

  // Twelve strict constant pairs: six through stacked-mode coefficients,
  // six through random constant coefficients.
  for (int i = 0; i < 6; ++i) {
    const int len = 1 + i % 3;
    const auto ex = make_diagonal_mode_example(dyadic_deltas(len));
    const Index h = Index(len);
    const Matrix c1 = testsupport::random_with_norm(h, h, 0.5, unsigned(9000 + i));
    const Matrix c2 = testsupport::random_with_norm(h, h, 0.6, unsigned(9100 + i));
    run_one(ex.phi, constant_fn(c1), constant_fn(c2), constant_grid);
  }
  for (int i = 0; i < 6; ++i) {
    const Index half = 1 + i % 2;
    const auto phi = random_constant_phi(half, unsigned(9200 + i));
    const Matrix c1 = testsupport::random_with_norm(half, half, 0.5, unsigned(9300 + i));
    const Matrix c2 = testsupport::random_with_norm(half, half, 0.6, unsigned(9400 + i));
    run_one(phi, constant_fn(c1), constant_fn(c2), constant_grid);
  }

  // Eight strict rational pairs, split the same way.
  const double scales[4][2] = {{0.3, 0.5}, {0.25, 0.45}, {0.2, 0.6}, {0.35, 0.15}};
  for (int i = 0; i < 4; ++i) {
    const int len = 1 + i % 2;
    const auto ex = make_diagonal_mode_example(dyadic_deltas(len));
    const Index h = Index(len);
    run_one(ex.phi, scaled_coordinate(h, scales[i][0]), scaled_coordinate(h, scales[i][1]),
            rational_grid);
  }
  for (int i = 0; i < 4; ++i) {
    const Index half = 1 + i % 2;
    const auto phi = random_constant_phi(half, unsigned(9500 + i));
    run_one(phi, scaled_coordinate(half, scales[i][1]), scaled_coordinate(half, scales[i][0]),
            rational_grid);
  }

  const bool pass = transported == 20 && max_residual <= 1e-8 &&
                    max_sup_excess <= 1e-8 && symmetric;
  CHECK(finish("equivalence transport, 20 pairs (constants and rational functions)", pass,
               t0, 10.0,
               "max residual " + fmt(max_residual) + ", max sup excess " +
                   fmt(max_sup_excess)));
}

TEST_CASE("stacked-mode images: closed-form witness with blow-up sup") {
  const auto t0 = Clock::now();
  const Tolerances tol;
  const std::vector<double> deltas = dyadic_deltas(8);
  const auto ex = make_diagonal_mode_example(deltas);
  const SchurFunction g1 = apply(ex.phi, ex.f1, tol);
  const SchurFunction g2 = apply(ex.phi, ex.f2, tol);
  const SamplingGrid grid = SamplingGrid::standard();

  double max_mismatch = 0.0, sup_w = 0.0;
  bool any_refused = false;
  for (double r : grid.radii) {
    for (Index k = 0; k < grid.angles; ++k) {
      const cd lambda = std::polar(r, 2.0 * M_PI * double(k) / double(grid.angles));
      const auto point = check_preceq(g1.eval(lambda), g2.eval(lambda), tol);
      if (!point.ok()) {
        any_refused = true;
        continue;
      }
      const Matrix w = point.witness->x_full();
      max_mismatch = std::max(max_mismatch, op_norm(w - ex.expected_q(lambda)));
      sup_w = std::max(sup_w, op_norm(w));
    }
  }

  const double dmax = deltas.back();
  const double bound = dmax / (1.0 - dmax * dmax);  // = 127.749... for j = 8
  const bool pass = !any_refused && max_mismatch <= 1e-8 && sup_w > bound;
  CHECK(finish("stacked-mode witness (8 dyadic modes): closed form and blow-up", pass, t0,
               5.0,
               "max mismatch " + fmt(max_mismatch) + ", sup " + fmt(sup_w) +
                   " > bound " + fmt(bound)));
}

TEST_CASE("boundary pull-back recovers the input witness") {
  const auto t0 = Clock::now();
  const Tolerances tol;
  const SamplingGrid grid = deep_grid();  // boundary ring stays at 256 samples

  double max_mismatch = 0.0, max_residual = 0.0;
  bool pass = true;
  std::size_t rows = 0;

  struct Scenario {
    std::vector<double> deltas;
    double f_scale, g_scale;
  };
  for (const Scenario& sc : {Scenario{{0.8}, 0.0, 0.5}, Scenario{{0.8, 0.5}, 0.25, -0.4}}) {
    const auto ex = make_diagonal_mode_example(sc.deltas);
    const Index h = Index(sc.deltas.size());
    const SchurFunction f = constant_fn(sc.f_scale * Matrix::Identity(h, h));
    const SchurFunction g = constant_fn(sc.g_scale * Matrix::Identity(h, h));
    const auto evidence =
        classify_equiv_infty(apply(ex.phi, f, tol), apply(ex.phi, g, tol), grid, tol);
    const auto outcome = pullback_equiv(ex.phi, f, g, evidence, grid, tol);
    REQUIRE_MESSAGE(outcome.ok(), (outcome.refusal ? outcome.refusal->reason : std::string()));
    const auto& report = *outcome.report;
    rows = report.rows.size();
    pass = pass && report.pass && rows == 256;
    max_mismatch = std::max(max_mismatch, report.max_mismatch);
    max_residual = std::max(max_residual, report.max_residual);
  }

  pass = pass && max_mismatch <= 1e-6 && max_residual <= 1e-6;
  CHECK(finish("boundary pull-back at 256 samples (one and two modes)", pass, t0, 5.0,
               "max mismatch " + fmt(max_mismatch) + ", max residual " +
                   fmt(max_residual)));
}

TEST_CASE("both sandwich routes accept and reject identically") {
  const auto t0 = Clock::now();
  const Tolerances tol;

  int agreements = 0, accepted = 0, rejected = 0;
  double max_residual = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Index n = 1 + i % 4;
    const Matrix u_frame = testsupport::random_unitary(n, unsigned(9600 + i));
    Vector eigs(n);
    const bool singular = (i % 3 == 0) && n > 1;
    for (Index k = 0; k < n; ++k)
      eigs(k) = cd(0.2 + 0.8 * double((k * 13 + i) % 9) / 8.0, 0.0);
    if (singular) eigs(0) = 0.0;
    const Matrix d = u_frame * eigs.asDiagonal() * u_frame.adjoint();

    const Matrix w = testsupport::random_with_norm(n, n, 1.5, unsigned(9700 + i));
    Matrix target = d * w * d;
    const bool spoiled = singular && (i % 2 == 0);
    if (spoiled) {
      // Push part of the target outside the range of d: unsolvable by both.
      target += 0.5 * u_frame.col(0) * u_frame.col(0).adjoint();
    }

    const auto direct = sandwich_solve(target, d, d, tol);
    const auto split = complex_sandwich_witness(target, d, tol);
    if (direct.accepted == split.accepted) ++agreements;
    if (direct.accepted) {
      ++accepted;
      max_residual = std::max({max_residual, direct.residual, split.residual});
    } else {
      ++rejected;
    }
  }

  const bool pass = agreements == 100 && accepted > 0 && rejected > 0 &&
                    max_residual <= 1e-8;
  CHECK(finish("sandwich route cross-check, 100 instances", pass, t0, 2.0,
               std::to_string(accepted) + " accepted / " + std::to_string(rejected) +
                   " rejected, max residual " + fmt(max_residual)));
}
