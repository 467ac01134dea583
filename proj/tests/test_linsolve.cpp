#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "dense_oracle.hpp"
#include "test_support.hpp"

using namespace curveflow;
using testsupport::kPi;

namespace {

SaddleSystem random_system(std::mt19937& rng, std::size_t n, bool cyclic, bool bordered) {
  std::uniform_real_distribution<double> dd(1.0, 2.0);
  std::uniform_real_distribution<double> od(0.05, 0.45);
  std::uniform_real_distribution<double> gd(-1.0, 1.0);
  SaddleSystem sys;
  sys.cyclic = cyclic;
  sys.bordered = bordered;
  sys.diag_x.resize(n);
  sys.diag_y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sys.diag_x[i] = dd(rng);
    sys.diag_y[i] = dd(rng);
  }
  const std::size_t couplings = cyclic ? n : n - 1;
  sys.off_x.resize(couplings);
  sys.off_y.resize(couplings);
  for (std::size_t i = 0; i < couplings; ++i) {
    const std::size_t j = (i + 1 == n) ? 0 : i + 1;
    // keep strict diagonal dominance so the system stays SPD
    sys.off_x[i] = od(rng) * std::min(sys.diag_x[i], sys.diag_x[j]);
    sys.off_y[i] = od(rng) * std::min(sys.diag_y[i], sys.diag_y[j]);
  }
  sys.rhs.resize(n);
  for (Point2& p : sys.rhs) p = {gd(rng), gd(rng)};
  if (bordered) {
    sys.border.resize(n);
    for (Point2& p : sys.border) p = {gd(rng), gd(rng)};
    sys.rhs_constraint = 0.0;
  }
  return sys;
}

double rhs_inf(const SaddleSystem& sys) {
  double m = 0.0;
  for (const Point2& p : sys.rhs) m = std::max({m, std::abs(p.x), std::abs(p.y)});
  return m;
}

}  // namespace

TEST(Solve, MatchesDenseOracleAcrossSizes) {
  std::mt19937 rng(41);
  std::uniform_int_distribution<std::size_t> nd(3, 200);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = nd(rng);
    const bool cyclic = k % 2 == 0;
    const bool bordered = k % 3 != 0;
    const SaddleSystem sys = random_system(rng, n, cyclic, bordered);
    SolveReport rep;
    const VelocityState mine = solve(sys, &rep);
    const VelocityState ref = testsupport::dense_solve(sys);
    EXPECT_LE(testsupport::max_diff(mine.velocities, ref.velocities), 1e-10);
    if (bordered) {
      EXPECT_NEAR(*mine.multiplier, *ref.multiplier, 1e-10);
    }
    EXPECT_LE(rep.residual_inf, 1e-10 * (1.0 + rhs_inf(sys)));
    EXPECT_GT(rep.pivot_min, 0.0);
  }
}

TEST(Solve, CurveAssembledSystemsMatchDenseOracle) {
  std::mt19937 rng(42);
  for (int k = 0; k < 40; ++k) {
    const ClosedCurve c = testsupport::random_closed_curve(rng);
    const OpenChain chain = testsupport::random_chain(rng);
    for (const SaddleSystem& sys :
         {assemble_mcf(c, PenaltyConfig::for_closed(c.nodes.size())),
          assemble_volume(c, PenaltyConfig::off()),
          assemble_wetting(chain, WettingPhysics{}, PenaltyConfig::off())}) {
      SolveReport rep;
      const VelocityState mine = solve(sys, &rep);
      const VelocityState ref = testsupport::dense_solve(sys);
      EXPECT_LE(testsupport::max_diff(mine.velocities, ref.velocities), 1e-10);
      EXPECT_LE(rep.residual_inf, 1e-10 * (1.0 + rhs_inf(sys)));
    }
  }
}

TEST(Solve, SquareMcfIsSymmetricInwardMotion) {
  const ClosedCurve square{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
  SolveReport rep;
  const VelocityState v = solve(assemble_mcf(square, PenaltyConfig::off()), &rep);
  EXPECT_LE(rep.residual_inf, 1e-12);
  const double speed = norm(v.velocities[0]);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(norm(v.velocities[i]), speed, 1e-13);
    const Point2 radial = (1.0 / norm(square.nodes[i])) * square.nodes[i];
    EXPECT_NEAR(dot(v.velocities[i], radial), -speed, 1e-13);
  }
  // closed form for the regular n-gon: 3 / (R * (2 + cos(2*pi/n)))
  EXPECT_NEAR(speed, 1.5, 1e-13);
}

TEST(Solve, RegularPolygonVolumeFlowIsStationary) {
  double prev = -2.0;
  for (std::size_t n : {4u, 8u, 16u, 40u, 80u}) {
    const VelocityState v =
        solve(assemble_volume(make_circle(n), PenaltyConfig::for_closed(n)));
    EXPECT_LE(stationarity(v), 1e-12);
    ASSERT_TRUE(v.multiplier.has_value());
    const double expect = -1.0 / std::cos(kPi / static_cast<double>(n));
    EXPECT_NEAR(*v.multiplier, expect, 1e-12);
    EXPECT_GT(*v.multiplier, prev);  // increases monotonically toward -1
    prev = *v.multiplier;
  }
  EXPECT_NEAR(-1.0 / std::cos(kPi / 4.0), -std::sqrt(2.0), 1e-15);
}

TEST(Solve, UniformSemicircleWettingIsStationary) {
  for (double gamma : {1.0, 2.0}) {
    WettingPhysics wp;
    wp.gamma = gamma;
    const std::size_t segs = 40;
    const OpenChain chain = make_semicircle(segs);
    const VelocityState v =
        solve(assemble_wetting(chain, wp, PenaltyConfig::for_chain(chain.nodes.size())));
    EXPECT_LE(stationarity(v), 1e-12 * gamma);
    const double delta = kPi / static_cast<double>(segs);
    EXPECT_NEAR(*v.multiplier, -gamma / std::cos(delta / 2), 1e-12);
  }
}

TEST(Solve, DeterministicBitwise) {
  std::mt19937 rng(43);
  const SaddleSystem sys = random_system(rng, 57, true, true);
  const VelocityState a = solve(sys);
  const VelocityState b = solve(sys);
  ASSERT_EQ(a.velocities.size(), b.velocities.size());
  EXPECT_EQ(0, std::memcmp(a.velocities.data(), b.velocities.data(),
                           a.velocities.size() * sizeof(Point2)));
  EXPECT_EQ(*a.multiplier, *b.multiplier);
}

TEST(Solve, SingularSystemDetected) {
  std::mt19937 rng(44);
  SaddleSystem sys = random_system(rng, 8, false, false);
  for (double& d : sys.diag_x) d = 0.0;
  for (double& o : sys.off_x) o = 0.0;
  EXPECT_THROW(solve(sys), SingularSystem);
}

TEST(Solve, WettingEndpointHeightsStayExactlyZero) {
  std::mt19937 rng(45);
  for (int k = 0; k < 20; ++k) {
    const OpenChain chain = testsupport::random_chain(rng);
    WettingPhysics wp;
    wp.theta_y = 0.4 + 0.2 * (k % 11);
    const VelocityState v = solve(
        assemble_wetting(chain, wp, PenaltyConfig::for_chain(chain.nodes.size())));
    EXPECT_EQ(v.velocities.front().y, 0.0);
    EXPECT_EQ(v.velocities.back().y, 0.0);
  }
}
