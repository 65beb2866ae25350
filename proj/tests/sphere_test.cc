#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "riskdir/error.h"
#include "riskdir/sphere.h"

namespace riskdir {
namespace {

UnitVector random_unit(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(d);
  for (double& x : v) x = g(rng);
  return UnitVector(std::move(v));
}

TEST(UnitVector, Renormalizes) {
  const UnitVector u({3.0, 4.0});
  EXPECT_DOUBLE_EQ(u[0], 0.6);
  EXPECT_DOUBLE_EQ(u[1], 0.8);
}

TEST(UnitVector, RejectsBadInput) {
  EXPECT_THROW(UnitVector({1.0}), Error);
  EXPECT_THROW(UnitVector({0.0, 0.0}), Error);
  EXPECT_THROW(UnitVector({NAN, 1.0}), Error);
}

TEST(UnitVector, AngleRoundTrip) {
  for (double a : {0.0, 0.3, kPi, 5.0}) {
    EXPECT_NEAR(UnitVector::from_angle(a).angle(), a, 1e-15);
  }
}

TEST(GeodesicDist, Identity) {
  const UnitVector x{0.3, -0.2, 0.9};
  EXPECT_EQ(geodesic_dist(x, x), 0.0);
}

TEST(GeodesicDist, Antipodal) {
  const UnitVector x{0.3, -0.2, 0.9};
  EXPECT_EQ(geodesic_dist(x, -x), kPi);
}

TEST(GeodesicDist, Orthogonal) {
  EXPECT_NEAR(geodesic_dist(UnitVector{1.0, 0.0}, UnitVector{0.0, 1.0}), kPi / 2, 1e-15);
}

TEST(GeodesicDist, MatchesClampedArccos) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto x = random_unit(4, rng);
    const auto y = random_unit(4, rng);
    EXPECT_NEAR(geodesic_dist(x, y), std::acos(std::clamp(dot(x, y), -1.0, 1.0)), 1e-12);
  }
}

TEST(GeodesicDist, DimensionMismatch) {
  try {
    geodesic_dist(UnitVector{1.0, 0.0}, UnitVector{1.0, 0.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(GeodesicDist, MetricAxioms) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const auto x = random_unit(3, rng);
    const auto y = random_unit(3, rng);
    const auto z = random_unit(3, rng);
    EXPECT_EQ(geodesic_dist(x, y), geodesic_dist(y, x));
    EXPECT_LE(geodesic_dist(x, z), geodesic_dist(x, y) + geodesic_dist(y, z) + 1e-9);
  }
}

TEST(GeodesicBall, DegenerateForms) {
  const UnitVector x{0.0, 1.0};
  EXPECT_TRUE(GeodesicBall::open(x, 0.0).is_empty());
  EXPECT_FALSE(GeodesicBall::open(x, 0.0).contains(x));
  EXPECT_TRUE(GeodesicBall::closed_ball(x, 0.0).contains(x));
  EXPECT_TRUE(GeodesicBall::closed_ball(x, kPi).is_full());
  EXPECT_TRUE(GeodesicBall::closed_ball(x, kPi).contains(-x));
  EXPECT_THROW(GeodesicBall(x, 4.0, false), Error);
  EXPECT_THROW(GeodesicBall(x, -0.1, false), Error);
}

TEST(BallComplement, QuarterBall) {
  const auto c = ball_complement(GeodesicBall::open(UnitVector{1.0, 0.0}, kPi / 4));
  EXPECT_TRUE(c.closed());
  EXPECT_EQ(c.center(), (UnitVector{-1.0, 0.0}));
  EXPECT_DOUBLE_EQ(c.radius(), 3 * kPi / 4);
}

TEST(BallComplement, FullRadiusLeavesAntipode) {
  const UnitVector x{0.6, 0.8};
  const auto c = ball_complement(GeodesicBall::open(x, kPi));
  EXPECT_TRUE(c.closed());
  EXPECT_EQ(c.radius(), 0.0);
  EXPECT_EQ(c.center(), -x);
  EXPECT_TRUE(c.contains(-x));
  EXPECT_FALSE(GeodesicBall::open(x, kPi).contains(-x));
}

TEST(BallComplement, ClosedInputFlipsFlag) {
  const auto c = ball_complement(GeodesicBall::closed_ball(UnitVector{1.0, 0.0}, 1.0));
  EXPECT_FALSE(c.closed());
  EXPECT_DOUBLE_EQ(c.radius(), kPi - 1.0);
}

TEST(BallComplement, PartitionsRandomPoints) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> r(0.0, kPi);
  for (std::size_t d : {2u, 3u, 5u}) {
    for (int i = 0; i < 10000; ++i) {
      const GeodesicBall b = GeodesicBall::open(random_unit(d, rng), r(rng));
      const GeodesicBall c = ball_complement(b);
      const auto p = random_unit(d, rng);
      EXPECT_NE(b.contains(p), c.contains(p));
    }
  }
}

TEST(BallComplement, PartitionsBoundaryPoints) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> r(0.01, kPi - 0.01);
  for (int i = 0; i < 2000; ++i) {
    const auto x = random_unit(3, rng);
    const auto y = random_unit(3, rng);
    const GeodesicBall b = GeodesicBall::open(x, geodesic_dist(x, y));
    EXPECT_NE(b.contains(y), ball_complement(b).contains(y));
  }
}

TEST(DirectionGrid, QuarterCircle) {
  const auto g = direction_grid(2, 4);
  ASSERT_EQ(g.size(), 4u);
  const double expect[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(g[i][0], expect[i][0], 1e-15);
    EXPECT_NEAR(g[i][1], expect[i][1], 1e-15);
  }
}

TEST(DirectionGrid, FibonacciSpread) {
  const auto g = direction_grid(3, 100);
  ASSERT_EQ(g.size(), 100u);
  double min_d = kPi;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      min_d = std::min(min_d, geodesic_dist(g[i], g[j]));
    }
  }
  EXPECT_GT(min_d, 0.1);
}

TEST(DirectionGrid, DegreeSpacing) {
  const auto g = direction_grid(2, 360);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(geodesic_dist(g[i], g[(i + 1) % g.size()]), kPi / 180, 1e-12);
  }
}

TEST(DirectionGrid, DeterministicInHigherDimensions) {
  const auto a = direction_grid(5, 50, 9);
  const auto b = direction_grid(5, 50, 9);
  const auto c = direction_grid(5, 50, 10);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_EQ(a.front().dim(), 5u);
}

TEST(DirectionGrid, RejectsSmallInputs) {
  EXPECT_THROW(direction_grid(2, 3), Error);
  EXPECT_THROW(direction_grid(1, 10), Error);
}

TEST(GeodesicPointBetween, Endpoints) {
  const UnitVector x{1.0, 0.2, 0.0};
  const UnitVector y{0.0, 1.0, 0.5};
  const auto z0 = geodesic_point_between(x, y, 0.0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(z0[i], x[i], 1e-15);
  const auto z1 = geodesic_point_between(x, y, geodesic_dist(x, y));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(z1[i], y[i], 1e-12);
}

TEST(GeodesicPointBetween, RejectsDegenerateEndpoints) {
  const UnitVector x{1.0, 0.0};
  EXPECT_THROW(geodesic_point_between(x, x, 0.0), Error);
  EXPECT_THROW(geodesic_point_between(x, -x, 0.1), Error);
  EXPECT_THROW(geodesic_point_between(x, UnitVector{0.0, 1.0}, 2.0), Error);
}

// The two points used to show both intersections of the ball-shrinking
// argument contain open sets.
TEST(GeodesicPointBetween, InsideAndOutsideIntermediateBall) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t d : {2u, 3u, 4u}) {
    for (int i = 0; i < 100; ++i) {
      const auto x = random_unit(d, rng);
      const auto y = random_unit(d, rng);
      const double delta = unit(rng) * geodesic_dist(-x, y) * 0.999;
      ASSERT_GT(delta, 0.0);
      const double r = geodesic_dist(x, y) + delta / 2;
      const auto z = geodesic_point_between(x, -y, delta / 4);
      const auto z2 = geodesic_point_between(x, -y, 3 * delta / 4);
      EXPECT_TRUE(GeodesicBall::open(x, delta).contains(z));
      EXPECT_TRUE(GeodesicBall::open(y, r).contains(z));
      EXPECT_TRUE(GeodesicBall::open(x, delta).contains(z2));
      EXPECT_FALSE(GeodesicBall::closed_ball(y, r).contains(z2));
    }
  }
}

TEST(Angles, NormalizeAndCircleDist) {
  EXPECT_DOUBLE_EQ(normalize_angle(-kPi / 2), 3 * kPi / 2);
  EXPECT_GE(normalize_angle(-1e-300), 0.0);
  EXPECT_LT(normalize_angle(-1e-300), kTwoPi);
  EXPECT_NEAR(circle_dist(0.1, kTwoPi - 0.1), 0.2, 1e-15);
  EXPECT_NEAR(circle_dist(0.0, kPi), kPi, 1e-15);
}

}  // namespace
}  // namespace riskdir
