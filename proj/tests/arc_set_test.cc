#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "riskdir/arc_set.h"
#include "riskdir/error.h"
#include "riskdir/sphere.h"

namespace riskdir {
namespace {

ArcSet random_arcs(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> len(0.05, 1.5);
  std::bernoulli_distribution flag(0.5);
  ArcSet a;
  const int parts = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < parts; ++i) {
    const double lo = angle(rng);
    a = a.unite(ArcSet::interval(lo, lo + len(rng), flag(rng), flag(rng)));
  }
  return a;
}

// Brute-force distance from theta to cl(a) by dense sampling of cl(a).
double sampled_dist(double theta, const ArcSet& a) {
  double best = kPi;
  for (const auto& c : a.closure().components()) {
    const int steps = 2000;
    for (int i = 0; i <= steps; ++i) {
      const double t = c.lo + (c.hi - c.lo) * i / steps;
      best = std::min(best, circle_dist(theta, t));
    }
  }
  return best;
}

void expect_same_arcs(const ArcSet& a, const ArcSet& b) {
  const auto ca = a.components();
  const auto cb = b.components();
  ASSERT_EQ(ca.size(), cb.size());
  for (std::size_t i = 0; i < ca.size(); ++i) {
    EXPECT_NEAR(ca[i].lo, cb[i].lo, 1e-12);
    EXPECT_NEAR(ca[i].hi, cb[i].hi, 1e-12);
    EXPECT_EQ(ca[i].lo_closed, cb[i].lo_closed);
    EXPECT_EQ(ca[i].hi_closed, cb[i].hi_closed);
  }
}

TEST(ArcSet, IntervalMembershipRespectsFlags) {
  const ArcSet a = ArcSet::interval(1.0, 2.0, true, false);
  EXPECT_TRUE(a.contains(1.0));
  EXPECT_TRUE(a.contains(1.5));
  EXPECT_FALSE(a.contains(2.0));
  EXPECT_FALSE(a.contains(0.5));
  EXPECT_DOUBLE_EQ(a.measure(), 1.0);
}

TEST(ArcSet, WrapsAroundZero) {
  const ArcSet a = ArcSet::interval(-0.5, 0.5, false, false);
  EXPECT_TRUE(a.contains(0.0));
  EXPECT_TRUE(a.contains(kTwoPi - 0.25));
  EXPECT_FALSE(a.contains(kPi));
  const auto comps = a.components();
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_NEAR(comps[0].lo, kTwoPi - 0.5, 1e-15);
  EXPECT_NEAR(comps[0].hi, kTwoPi + 0.5, 1e-15);
  EXPECT_NEAR(a.measure(), 1.0, 1e-14);
}

TEST(ArcSet, EmptyAndFull) {
  EXPECT_TRUE(ArcSet::empty().is_empty());
  EXPECT_TRUE(ArcSet::full().is_full());
  EXPECT_TRUE(ArcSet::interval(0.0, kTwoPi, true, false).is_full());
  EXPECT_TRUE(ArcSet::interval(1.0, 1.0, false, false).is_empty());
  EXPECT_TRUE(ArcSet::interval(1.0, 1.0, true, true).contains(1.0));
  EXPECT_EQ(ArcSet::full().complement(), ArcSet::empty());
  EXPECT_DOUBLE_EQ(ArcSet::full().measure(), kTwoPi);
}

TEST(ArcSet, SetAlgebra) {
  const ArcSet a = ArcSet::interval(0.0, 2.0, true, true);
  const ArcSet b = ArcSet::interval(1.0, 3.0, false, false);
  EXPECT_NEAR(a.unite(b).measure(), 3.0, 1e-15);
  EXPECT_NEAR(a.intersect(b).measure(), 1.0, 1e-15);
  const ArcSet d = a.subtract(b);
  EXPECT_TRUE(d.contains(1.0));
  EXPECT_FALSE(d.contains(1.5));
  EXPECT_NEAR(d.measure(), 1.0, 1e-15);
  EXPECT_EQ(a.unite(a.complement()), ArcSet::full());
  EXPECT_TRUE(a.intersect(a.complement()).is_empty());
}

TEST(ArcSet, ClosureAddsEndpoints) {
  const ArcSet a = ArcSet::interval(1.0, 2.0, false, false);
  EXPECT_FALSE(a.contains(1.0));
  EXPECT_TRUE(a.closure().contains(1.0));
  EXPECT_TRUE(a.closure().contains(2.0));
}

TEST(ArcSet, RandomAlgebraMatchesPointwise) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int trial = 0; trial < 200; ++trial) {
    const ArcSet a = random_arcs(rng);
    const ArcSet b = random_arcs(rng);
    const ArcSet u = a.unite(b);
    const ArcSet i = a.intersect(b);
    const ArcSet s = a.subtract(b);
    const ArcSet c = a.complement();
    for (int k = 0; k < 200; ++k) {
      const double t = angle(rng);
      EXPECT_EQ(u.contains(t), a.contains(t) || b.contains(t));
      EXPECT_EQ(i.contains(t), a.contains(t) && b.contains(t));
      EXPECT_EQ(s.contains(t), a.contains(t) && !b.contains(t));
      EXPECT_EQ(c.contains(t), !a.contains(t));
    }
  }
}

TEST(ArcSet, SwellMergesCloseArcs) {
  const ArcSet a = ArcSet::interval(0.0, 1.0, true, true)
                       .unite(ArcSet::interval(1.3, 2.0, true, true));
  ASSERT_EQ(a.components().size(), 2u);
  const ArcSet s = a.swell(0.2);
  ASSERT_EQ(s.components().size(), 1u);
  EXPECT_NEAR(s.components()[0].lo, kTwoPi - 0.2, 1e-12);
  EXPECT_NEAR(s.components()[0].hi, kTwoPi + 2.2, 1e-12);
}

TEST(ArcSet, SwellKeepsFarArcsApart) {
  const ArcSet a = ArcSet::interval(0.0, 1.0, true, true)
                       .unite(ArcSet::interval(1.5, 2.0, true, true));
  EXPECT_EQ(a.swell(0.2).components().size(), 2u);
}

TEST(ArcSet, SwellOfBallGrowsRadius) {
  const ArcSet b = ArcSet::ball(1.0, 0.3, false);
  expect_same_arcs(b.swell(0.2), ArcSet::ball(1.0, 0.5, false));
  EXPECT_TRUE(ArcSet::full().swell(0.1).is_full());
  EXPECT_THROW(b.swell(0.0), Error);
}

TEST(ArcHausdorff, Identity) {
  const ArcSet a = ArcSet::interval(0.3, 1.4, true, false);
  EXPECT_EQ(arc_hausdorff(a, a), 0.0);
}

TEST(ArcHausdorff, Translation) {
  const double delta = 0.07;
  const ArcSet a = ArcSet::interval(0.0, kPi / 2, true, true);
  const ArcSet b = ArcSet::interval(delta, kPi / 2 + delta, true, true);
  EXPECT_NEAR(arc_hausdorff(a, b), delta, 1e-15);
}

TEST(ArcHausdorff, SeparatedArcs) {
  const ArcSet a = ArcSet::interval(0.0, kPi / 4, true, true);
  const ArcSet b = ArcSet::interval(kPi / 2, 3 * kPi / 4, true, true);
  EXPECT_NEAR(arc_hausdorff(a, b), kPi / 2, 1e-15);
}

TEST(ArcHausdorff, EmptyThrows) {
  try {
    arc_hausdorff(ArcSet::empty(), ArcSet::full());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySet);
  }
}

TEST(ArcHausdorff, MatchesBruteForce) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const ArcSet a = random_arcs(rng);
    const ArcSet b = random_arcs(rng);
    double brute = 0.0;
    for (const auto& c : a.closure().components()) {
      for (int i = 0; i <= 2000; ++i) {
        brute = std::max(brute, sampled_dist(c.lo + (c.hi - c.lo) * i / 2000, b));
      }
    }
    EXPECT_NEAR(arc_directed_hausdorff(a, b), brute, 2e-3);
  }
}

}  // namespace
}  // namespace riskdir
