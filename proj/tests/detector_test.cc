#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "riskdir/detector.h"
#include "riskdir/error.h"
#include "riskdir/synthdata.h"

namespace riskdir {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

CapSet arc(double lo, double hi) {
  return CapSet::from_arcs(ArcSet::interval(lo, hi, true, false));
}

// Heavy Pareto(2) on the arc of half-width w around angle 0, Pareto(3) elsewhere.
ConeMixtureModel centered_arc_model(double w) {
  ConeMixtureModel m;
  m.cones.push_back({arc(kTwoPi - w, kTwoPi + w), w / kPi, RadialLaw::pareto(2.0, 1.0)});
  m.cones.push_back({arc(w, kTwoPi - w), 1.0 - w / kPi, RadialLaw::pareto(3.0, 1.0)});
  return m;
}

ConeMixtureModel upper_half_model() {
  ConeMixtureModel m;
  m.cones.push_back({CapSet::from_arcs(ArcSet::interval(0.0, kPi, true, true)), 0.5,
                     RadialLaw::pareto(2.0, 1.0)});
  m.cones.push_back({CapSet::from_arcs(ArcSet::interval(kPi, kTwoPi, false, false)), 0.5,
                     RadialLaw::weibull(0.5, 1.0)});
  return m;
}

bool same_set(const CapSet& a, const CapSet& b) { return a.arcs() == b.arcs(); }

bool same_verdicts(const EstimateS& a, const EstimateS& b) {
  if (a.verdicts.size() != b.verdicts.size()) return false;
  for (std::size_t i = 0; i < a.verdicts.size(); ++i) {
    const auto& x = a.verdicts[i];
    const auto& y = b.verdicts[i];
    if (!(x.v == y.v) || x.s_v != y.s_v || x.g_value != y.g_value || x.in_ball != y.in_ball ||
        x.accepted != y.accepted || x.reliable != y.reliable) {
      return false;
    }
  }
  return true;
}

TEST(DetectorConfig, Validation) {
  DetectorConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.tolerance_c = 0.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = DetectorConfig{};
  cfg.ball_mass_q = 1.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = DetectorConfig{};
  cfg.grid_m = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = DetectorConfig{};
  cfg.threshold = ThresholdSpec::top_fraction(0.0);
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(SmallestMassBall, AllDirectionsEqual) {
  const UnitVector v = UnitVector::from_angle(1.0);
  const PolarSample s(std::vector<double>(50, 2.0), std::vector<UnitVector>(50, v));
  const double r = smallest_mass_ball(s, v, 0.1);
  EXPECT_GT(r, 0.0);
  EXPECT_LT(r, 1e-300);
}

TEST(SmallestMassBall, CountingExample) {
  const UnitVector v = UnitVector::from_angle(0.0);
  std::vector<UnitVector> dirs;
  for (int i = 10; i >= 1; --i) dirs.push_back(UnitVector::from_angle(0.1 * i));
  const PolarSample s(std::vector<double>(10, 1.0), dirs);
  const double r = smallest_mass_ball(s, v, 0.25);
  EXPECT_NEAR(r, 0.3, 1e-12);
  const CapSet ball = CapSet::from_ball(GeodesicBall::open(v, r));
  std::size_t in = 0;
  for (const auto& u : dirs) in += ball.contains(u) ? 1 : 0;
  EXPECT_EQ(in, 3u);
}

TEST(SmallestMassBall, UniformCircle) {
  ConeMixtureModel m;
  m.cones.push_back({CapSet::full(2), 1.0, RadialLaw::pareto(2.0, 1.0)});
  const PolarSample s = sample_cone_mixture(m, 100000, 3);
  for (double a : {0.0, 1.0, 4.0}) {
    EXPECT_NEAR(smallest_mass_ball(s, UnitVector::from_angle(a), 0.1), 0.1 * kPi, 0.01 * kPi);
  }
}

TEST(SmallestMassBall, RejectsTooSmallMass) {
  const UnitVector v = UnitVector::from_angle(0.0);
  const PolarSample s(std::vector<double>(5, 1.0), std::vector<UnitVector>(5, v));
  EXPECT_THROW(smallest_mass_ball(s, v, 0.1), Error);
  EXPECT_THROW(smallest_mass_ball(s, v, 0.0), Error);
}

class EightConeScan : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    sample_ = new PolarSample(sample_cone_mixture(default_eight_cone_model(), 100000, 1));
    result_ = new EstimateS(scan(*sample_, DetectorConfig{}));
  }
  static void TearDownTestSuite() {
    delete result_;
    delete sample_;
  }
  static PolarSample* sample_;
  static EstimateS* result_;
};

PolarSample* EightConeScan::sample_ = nullptr;
EstimateS* EightConeScan::result_ = nullptr;

TEST_F(EightConeScan, FindsBothHeavyCones) {
  const CapSet& est = result_->estimate;
  ASSERT_FALSE(est.is_empty());
  EXPECT_EQ(result_->verdicts.size(), 360u);
  EXPECT_EQ(result_->n_exceedances, 500u);
  EXPECT_TRUE(est.contains(UnitVector::from_angle(kPi / 8)));
  EXPECT_TRUE(est.contains(UnitVector::from_angle(kPi + kPi / 8)));
  for (int j : {1, 2, 3, 5, 6, 7}) {
    EXPECT_FALSE(est.contains(UnitVector::from_angle((2 * j + 1) * kPi / 8))) << j;
  }
}

TEST_F(EightConeScan, EstimateInsideAcceptedAndOutsideRejected) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int i = 0; i < 5000; ++i) {
    const UnitVector x = UnitVector::from_angle(angle(rng));
    bool in_accepted = false;
    bool in_rejected = false;
    for (const auto& vd : result_->verdicts) {
      if (geodesic_dist(vd.v, x) >= vd.s_v) continue;
      if (vd.accepted) in_accepted = true;
      if (!vd.accepted && vd.reliable) in_rejected = true;
    }
    EXPECT_EQ(result_->estimate.contains(x), in_accepted && !in_rejected) << x.angle();
  }
}

TEST_F(EightConeScan, VerdictsFollowTheRule) {
  for (const auto& vd : result_->verdicts) {
    EXPECT_EQ(vd.accepted, vd.g_value <= 1.0 + 0.5);
    EXPECT_EQ(vd.reliable, vd.in_ball >= 10);
  }
}

TEST_F(EightConeScan, Deterministic) {
  const EstimateS again = scan(*sample_, DetectorConfig{});
  EXPECT_TRUE(same_verdicts(*result_, again));
  EXPECT_TRUE(same_set(result_->estimate, again.estimate));
}

TEST_F(EightConeScan, MaxLevelsOneMatchesScan) {
  const RiskRanking r = risk_ranking(*sample_, DetectorConfig{}, 1);
  ASSERT_EQ(r.levels.size(), 1u);
  EXPECT_TRUE(same_verdicts(r.levels[0], *result_));
  EXPECT_TRUE(same_set(r.levels[0].estimate, result_->estimate));
  EXPECT_EQ(r.stop_reason, "reached max levels");
}

TEST(Scan, HomogeneousModelAcceptsAlmostEverything) {
  const auto m = sector_model(std::vector<RadialLaw>(8, RadialLaw::pareto(2.0, 1.0)));
  for (std::uint64_t seed : {1, 2, 3}) {
    const EstimateS e = scan(sample_cone_mixture(m, 100000, seed), DetectorConfig{});
    const auto accepted = std::count_if(e.verdicts.begin(), e.verdicts.end(),
                                        [](const DirectionVerdict& v) { return v.accepted; });
    EXPECT_GE(static_cast<double>(accepted) / e.verdicts.size(), 0.9) << seed;
  }
}

TEST(Scan, SingletonModelWarns) {
  const EstimateS e = scan(sample_cone_mixture(default_singleton_model(), 100000, 1),
                           DetectorConfig{});
  ASSERT_FALSE(e.warnings.empty());
  EXPECT_NE(e.warnings.front().find("empty"), std::string::npos) << e.warnings.front();
}

TEST(Scan, TooFewExceedances) {
  const PolarSample s = sample_cone_mixture(default_eight_cone_model(), 1000, 1);
  EXPECT_EQ(code_of([&] { scan(s, DetectorConfig{}); }), ErrorCode::kNoExceedances);
}

TEST(AlgorithmAv, FullWhenAntipodeInS) {
  const AnalyticG g(default_eight_cone_model());
  const AvResult r = algorithm_Av(g, UnitVector::from_angle(kPi + kPi / 8));
  EXPECT_EQ(r.kind, AvResult::Kind::kFull);
  EXPECT_TRUE(r.set.is_full());
}

TEST(AlgorithmAv, EmptyForSingletonS) {
  const UnitVector v = UnitVector::from_angle(kPi / 3);
  const AnalyticG g(singleton_model(v, 0.05, RadialLaw::pareto(2.0, 1.0),
                                    RadialLaw::pareto(3.0, 1.0)));
  const AvResult r = algorithm_Av(g, v);
  EXPECT_EQ(r.kind, AvResult::Kind::kEmpty);
  EXPECT_TRUE(r.set.is_empty());
}

TEST(AlgorithmAv, SmallestBallCoveringArc) {
  for (double w : {0.2, 0.5, 1.0}) {
    const AnalyticG g(centered_arc_model(w));
    const UnitVector v = UnitVector::from_angle(0.0);
    const double tol = 1e-5;
    const AvResult r = algorithm_Av(g, v, tol);
    ASSERT_EQ(r.kind, AvResult::Kind::kBall);
    EXPECT_NEAR(r.radius, w, 2 * tol);
    // Bracket certificate.
    auto outside = [&](double rad) {
      return CapSet::from_ball(ball_complement(GeodesicBall::open(v, rad)));
    };
    EXPECT_GT(g(outside(r.radius + tol)), 1.0);
    EXPECT_EQ(g(outside(r.radius - tol)), 1.0);
    EXPECT_TRUE(r.set.contains(UnitVector::from_angle(w - 1e-3)));
    EXPECT_FALSE(r.set.contains(UnitVector::from_angle(w + 3 * tol)));
  }
}

TEST(AlgorithmAv, NonMonotoneOracle) {
  const UnitVector v = UnitVector::from_angle(0.0);
  // Large sets get G = 2, small ones G = 1.
  const GOracle bad = [](const CapSet& a) {
    if (a.is_full()) return 1.0;
    return a.arcs().measure() > kPi ? 2.0 : 1.0;
  };
  EXPECT_EQ(code_of([&] { algorithm_Av(bad, v); }), ErrorCode::kNonMonotoneOracle);
  const GOracle not_normalized = [](const CapSet&) { return 2.0; };
  EXPECT_EQ(code_of([&] { algorithm_Av(not_normalized, v); }), ErrorCode::kNonMonotoneOracle);
}

TEST(AlgorithmEstimate, UpperHalfArc) {
  const AnalyticG g(upper_half_model());
  const auto grid = direction_grid(2, 360);
  const double tol = 1e-4;
  const CapSet est = algorithm_estimate(g, grid, tol);
  const CapSet truth = true_S(upper_half_model());
  EXPECT_LE(hausdorff_dist(est.closure(), truth), kTwoPi / 360 + 2 * tol);
}

TEST(AlgorithmEstimate, SingleDirectionGrid) {
  const AnalyticG g(upper_half_model());
  const std::vector<UnitVector> grid{UnitVector::from_angle(3 * kPi / 2)};
  EXPECT_TRUE(algorithm_estimate(g, grid).is_full());
}

TEST(AlgorithmEstimate, RefinedGridGivesSubset) {
  const AnalyticG g(three_tier_model(RadialLaw::weibull(0.5, 4.0)));
  const auto coarse = direction_grid(2, 12);
  auto fine = coarse;
  for (const auto& v : direction_grid(2, 37)) fine.push_back(v);
  const CapSet a = algorithm_estimate(g, coarse);
  const CapSet b = algorithm_estimate(g, fine);
  EXPECT_TRUE(b.subtract(a).is_empty());
  EXPECT_FALSE(a.subtract(b).is_empty());
}

TEST(AlgorithmEstimate, RejectsEmptyGrid) {
  const AnalyticG g(upper_half_model());
  EXPECT_THROW(algorithm_estimate(g, std::vector<UnitVector>{}), Error);
}

TEST(AlgorithmEstimate, FootballInThreeDimensions) {
  // Pentagon centers are the icosahedron vertices, hexagon centers its face centers.
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<UnitVector> vertices;
  for (double a : {-1.0, 1.0}) {
    for (double b : {-phi, phi}) {
      vertices.emplace_back(std::vector<double>{0.0, a, b});
      vertices.emplace_back(std::vector<double>{a, b, 0.0});
      vertices.emplace_back(std::vector<double>{b, 0.0, a});
    }
  }
  ASSERT_EQ(vertices.size(), 12u);
  std::vector<GeodesicBall> caps;
  for (const auto& v : vertices) caps.push_back(GeodesicBall::closed_ball(v, 0.3));
  const CapSet heavy = CapSet::from_balls(caps, {}, 3);
  ConeMixtureModel m;
  m.dim = 3;
  const double cap_area = 2 * kPi * (1 - std::cos(0.3));
  const double heavy_weight = 12 * cap_area / (4 * kPi);
  m.cones.push_back({heavy, heavy_weight, RadialLaw::pareto(2.0, 1.0)});
  m.cones.push_back({CapSet::full(3).subtract(heavy), 1.0 - heavy_weight,
                     RadialLaw::pareto(3.0, 1.0)});
  const AnalyticG g(m);
  const CapSet est = algorithm_estimate(g, direction_grid(3, 400), 1e-3);
  std::size_t faces = 0;
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = i + 1; j < 12; ++j) {
      for (std::size_t l = j + 1; l < 12; ++l) {
        const UnitVector& a = vertices[i];
        const UnitVector& b = vertices[j];
        const UnitVector& c = vertices[l];
        if (geodesic_dist(a, b) > 1.2 || geodesic_dist(b, c) > 1.2 || geodesic_dist(a, c) > 1.2) {
          continue;
        }
        std::vector<double> x(3);
        for (std::size_t i = 0; i < 3; ++i) x[i] = a[i] + b[i] + c[i];
        EXPECT_FALSE(est.contains(UnitVector(x)));
        ++faces;
      }
    }
  }
  EXPECT_EQ(faces, 20u);
  for (const auto& v : vertices) EXPECT_TRUE(est.contains(v));
}

TEST(RiskRanking, ThreeTierLevels) {
  // Narrow test balls, so rejections near the cone edges carve little of level 1.
  const auto m = three_tier_model(RadialLaw::weibull(0.5, 4.0));
  DetectorConfig cfg;
  cfg.ball_mass_q = 0.02;
  const RiskRanking r = risk_ranking(sample_cone_mixture(m, 200000, 1), cfg, 3);
  ASSERT_GE(r.levels.size(), 2u);
  const CapSet& l1 = r.levels[0].estimate;
  const CapSet& l2 = r.levels[1].estimate;
  EXPECT_TRUE(l1.contains(UnitVector::from_angle(kPi / 8)));
  EXPECT_FALSE(l1.contains(UnitVector::from_angle(kPi + kPi / 8)));
  EXPECT_TRUE(l2.contains(UnitVector::from_angle(kPi + kPi / 8)));
  EXPECT_EQ(r.sample_sizes[0], 200000u);
  EXPECT_EQ(r.sample_sizes.size(), r.levels.size());
  EXPECT_EQ(r.removed_fractions.size(), r.levels.size());
  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    for (std::size_t j = i + 1; j < r.levels.size(); ++j) {
      EXPECT_LT(r.levels[i].estimate.arcs().intersect(r.levels[j].estimate.arcs()).measure(), 1e-12);
    }
  }
}

TEST(RiskRanking, HomogeneousModelStops) {
  const auto m = sector_model(std::vector<RadialLaw>(8, RadialLaw::pareto(2.0, 1.0)));
  const RiskRanking r = risk_ranking(sample_cone_mixture(m, 100000, 2), DetectorConfig{}, 3);
  ASSERT_FALSE(r.levels.empty());
  if (r.levels.size() > 1) {
    EXPECT_LT(r.sample_sizes[1], 100000u / 5);
  }
  EXPECT_NE(r.stop_reason, "reached max levels");
}

TEST(RiskRanking, RejectsZeroLevels) {
  const PolarSample s = sample_cone_mixture(default_eight_cone_model(), 1000, 1);
  EXPECT_THROW(risk_ranking(s, DetectorConfig{}, 0), Error);
}

}  // namespace
}  // namespace riskdir
