#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace curveflow;
using testsupport::kPi;

TEST(ExactCircle, ValuesAndExtinction) {
  EXPECT_DOUBLE_EQ(exact_circle(1.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(exact_circle(1.0, 0.375), 0.5);
  EXPECT_NEAR(exact_circle(1.0, 0.2), 0.7745966692414834, 1e-15);
  EXPECT_THROW(exact_circle(1.0, 0.5), ExtinctionReached);
  EXPECT_THROW(exact_circle(1.0, 0.6), ExtinctionReached);
}

TEST(Err1, NodeSamplingOnRegularPolygons) {
  // nodes on the reference circle: node deviation is zero
  EXPECT_LE(err1(make_circle(40), 1.0), 1e-14);
  // scaled polygon: node deviation is the radius difference
  ClosedCurve scaled = make_circle(17);
  for (Point2& p : scaled.nodes) p = 0.9 * p;
  EXPECT_NEAR(err1(scaled, 1.0), 0.1, 1e-13);
}

TEST(Err1Polyline, EqualsSagittaForInscribedPolygon) {
  for (std::size_t n : {12u, 40u}) {
    const double rho = 1.0;
    const double sagitta = rho * (1.0 - std::cos(kPi / static_cast<double>(n)));
    // the machine-precision polygonized circle measures its own sagitta, not 0
    EXPECT_NEAR(err1_polyline(make_circle(n), rho), sagitta, 1e-12);
  }
  EXPECT_NEAR(err1_polyline(make_circle(40), 1.0), 0.003082666266872036, 1e-12);
  EXPECT_GE(err1_polyline(make_circle(40), 1.0), err1(make_circle(40), 1.0));
}

TEST(Order, PublishedPairsAndSyntheticSlope) {
  const std::pair<std::size_t, double> table1[] = {
      {5, 8.1561e-2}, {10, 1.7758e-2}, {20, 4.2941e-3}, {40, 1.0647e-3}, {80, 2.6563e-4}};
  const auto rows = order(table1);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_TRUE(std::isnan(rows[0].order));
  EXPECT_NEAR(rows[1].order, 2.20, 5e-3);
  EXPECT_NEAR(rows[2].order, 2.05, 5e-3);
  EXPECT_NEAR(rows[3].order, 2.01, 5e-3);
  EXPECT_NEAR(rows[4].order, 2.00, 5e-3);

  const std::pair<std::size_t, double> table4[] = {{40, 1.7409e-3}, {80, 4.4573e-4}};
  EXPECT_NEAR(order(table4)[1].order, 1.97, 5e-3);

  std::vector<std::pair<std::size_t, double>> synthetic;
  for (std::size_t n : {8u, 16u, 32u, 64u}) {
    synthetic.emplace_back(n, 3.7 / static_cast<double>(n * n));
  }
  for (std::size_t k = 1; k < synthetic.size(); ++k) {
    EXPECT_NEAR(order(synthetic)[k].order, 2.0, 1e-12);
  }

  const std::pair<std::size_t, double> equal[] = {{10, 1e-3}, {20, 1e-3}};
  EXPECT_NEAR(order(equal)[1].order, 0.0, 1e-15);
}

TEST(ExactCap, KnownGeometries) {
  const CapReference semi = exact_cap(kPi / 2, kPi / 2);
  EXPECT_NEAR(semi.radius, 1.0, 1e-14);
  EXPECT_NEAR(semi.energy, kPi, 1e-14);

  const CapReference obtuse = exact_cap(kPi / 2, 2.0 * kPi / 3.0);
  EXPECT_NEAR(obtuse.radius, 0.7883558187058884, 1e-13);
  EXPECT_NEAR(obtuse.energy, 3.9849932975021596, 1e-13);

  const CapReference acute = exact_cap(kPi / 2, kPi / 3.0);
  EXPECT_NEAR(acute.radius, 1.5992280146520228, 1e-13);
  EXPECT_NEAR(acute.energy, 2.0 * (kPi / 2) / acute.radius, 1e-13);
  EXPECT_NEAR(acute.energy, 1.9644432343647849, 1e-13);
}

TEST(ExactCap, PolygonIsValidConvexAndAreaAccurate) {
  for (double theta : {kPi / 3.0, kPi / 2, 2.0 * kPi / 3.0}) {
    const CapReference cap = exact_cap(kPi / 2, theta, 1.25);
    EXPECT_NO_THROW(validate(cap.polygon));
    EXPECT_EQ(cap.polygon.nodes.size(), 16384u);
    EXPECT_EQ(cap.polygon.nodes.front().y, 0.0);
    EXPECT_EQ(cap.polygon.nodes.back().y, 0.0);
    EXPECT_NEAR(enclosed_area(cap.polygon), kPi / 2, 1e-6);
    EXPECT_NEAR(0.5 * (cap.polygon.nodes.front().x + cap.polygon.nodes.back().x), 1.25,
                1e-12);
  }
}

TEST(Err2, DiscretizationGapOfCoarseCapPolygon) {
  const double theta = 2.0 * kPi / 3.0;
  const CapReference cap = exact_cap(kPi / 2, theta);
  const CapReference coarse = exact_cap(kPi / 2, theta, 0.0, 41);
  const double gap = err2(coarse.polygon, theta, cap.energy);
  EXPECT_GT(gap, 0.0);
  EXPECT_LT(gap, 2e-3);  // second-order small but clearly nonzero
  EXPECT_NEAR(err2(cap.polygon, theta, cap.energy), 0.0, 1e-6);
}

TEST(Err3, CalibrationDiskVersusInscribedSquare) {
  const ClosedCurve disk = make_circle(16384);
  const std::vector<Point2> square{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const double expect = kPi - 2.0;
  EXPECT_NEAR(symmetric_difference_area(square, disk.nodes), expect, 1e-6);
}

TEST(Err3, IdenticalRegionsAndSymmetry) {
  const CapReference cap = exact_cap(kPi / 2, 2.0 * kPi / 3.0, 0.0, 300);
  EXPECT_NEAR(symmetric_difference_area(cap.polygon.nodes, cap.polygon.nodes), 0.0, 1e-12);

  std::mt19937 rng(61);
  for (int k = 0; k < 30; ++k) {
    const ClosedCurve a = testsupport::random_convex_polygon(rng);
    const ClosedCurve b = testsupport::random_convex_polygon(rng);
    const double ab = symmetric_difference_area(a.nodes, b.nodes);
    const double ba = symmetric_difference_area(b.nodes, a.nodes);
    EXPECT_GE(ab, -1e-12);
    EXPECT_NEAR(ab, ba, 1e-12 * std::max(1.0, ab));
  }
}

TEST(Err3, AlignmentRemovesHorizontalTranslation) {
  const CapReference cap = exact_cap(kPi / 2, kPi / 3.0, 0.0, 2000);
  OpenChain shifted = cap.polygon;
  for (Point2& p : shifted.nodes) p.x += 4.25;
  EXPECT_NEAR(err3(shifted, cap), 0.0, 1e-10);
}

TEST(Err3, RejectsNonSimpleRegion) {
  const std::vector<Point2> bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  const ClosedCurve disk = make_circle(64);
  EXPECT_THROW(symmetric_difference_area(bowtie, disk.nodes), ClippingFailure);
  const std::vector<Point2> notconvex{{2, 0}, {0, 2}, {-2, 0}, {0, -2}, {1.8, -1.8}};
  const std::vector<Point2> square{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  EXPECT_THROW(symmetric_difference_area(square, notconvex), ClippingFailure);
}

TEST(Dissipation, KnownFieldsAndQuadratureOracle) {
  std::mt19937 rng(62);
  const ClosedCurve c = testsupport::random_closed_curve(rng);
  const SaddleSystem sys = assemble_mcf(c, PenaltyConfig::off());

  VelocityState zero;
  zero.velocities.assign(c.nodes.size(), Point2{});
  EXPECT_DOUBLE_EQ(dissipation(sys, zero), 0.0);

  VelocityState shift;
  const Point2 u{0.3, -0.7};
  shift.velocities.assign(c.nodes.size(), u);
  EXPECT_NEAR(dissipation(sys, shift), 0.5 * norm2(u) * total_length(c),
              1e-12 * total_length(c));

  for (int k = 0; k < 100; ++k) {
    VelocityState v;
    v.velocities = testsupport::random_velocity(rng, c.nodes.size());
    const double phi = testsupport::quadrature_dissipation(c.nodes, v.velocities, true);
    EXPECT_NEAR(dissipation(sys, v), phi, 1e-10 * std::max(1.0, phi));
  }
}

TEST(EnergyDecay, FiniteDifferenceResidualShrinksLinearly) {
  // (E(t_{k+1}) - E(t_k)) / dt + 2 Phi(t_k) -> 0 at O(dt) along trajectories.
  const std::size_t n = 16;
  const FlowProblem problem{FlowKind::mcf, {}, PenaltyConfig::off()};
  auto worst_residual = [&](double dt) {
    StepControls controls;
    controls.dt = dt;
    controls.t_end = 0.1;
    controls.record_stride = 1;
    const Trajectory traj = run(problem, make_circle(n), controls);
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < traj.records.size(); ++k) {
      const double fd =
          (traj.records[k + 1].penalized_energy - traj.records[k].penalized_energy) /
          (traj.times[k + 1] - traj.times[k]);
      worst = std::max(worst, std::abs(fd + 2.0 * traj.records[k].dissipation));
    }
    return worst;
  };
  const double r1 = worst_residual(2e-3);
  const double r2 = worst_residual(1e-3);
  EXPECT_NEAR(r1 / r2, 2.0, 0.6);
}
