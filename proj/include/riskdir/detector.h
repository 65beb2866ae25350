#ifndef RISKDIR_DETECTOR_H_
#define RISKDIR_DETECTOR_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "riskdir/cap_set.h"
#include "riskdir/sphere.h"
#include "riskdir/tail_stats.h"

namespace riskdir {

struct DetectorConfig {
  double tolerance_c = 0.5;
  ThresholdSpec threshold = ThresholdSpec::top_fraction(0.005);
  double ball_mass_q = 0.10;
  int grid_m = 360;
  std::uint64_t seed = kDefaultGridSeed;
  std::size_t min_reliable_count = kMinReliableCount;

  void validate() const;
  bool operator==(const DetectorConfig&) const = default;
};

inline constexpr std::size_t kMinScanExceedances = 20;

struct DirectionVerdict {
  UnitVector v;
  double s_v = 0.0;
  double g_value = 0.0;
  std::size_t in_ball = 0;  // exceedances with direction in B(v, s_v)
  bool accepted = false;    // g_value <= 1 + c
  bool reliable = false;    // in_ball >= min_reliable_count
};

struct EstimateS {
  // (union of accepted balls) \ (union of reliable rejected balls)
  CapSet estimate;
  std::vector<DirectionVerdict> verdicts;
  DetectorConfig config;
  double threshold_k = 0.0;
  std::size_t n_exceedances = 0;
  std::vector<std::string> warnings;
};

// The ceil(n q)-th smallest geodesic distance from v to the sample
// directions, nudged up by one ulp so the open ball contains it.
double smallest_mass_ball(const PolarSample& s, const UnitVector& v, double q);

EstimateS scan(const PolarSample& s, const DetectorConfig& cfg);

using GOracle = std::function<double(const CapSet&)>;

inline constexpr double kDefaultBisectionTol = 1e-4;

struct AvResult {
  enum class Kind { kEmpty, kFull, kBall };
  Kind kind = Kind::kEmpty;
  double radius = 0.0;  // bisection upper bracket for kBall
  CapSet set;
};

// A_v of the ball-shrinking algorithm: the smallest open ball around v whose
// complement has G > 1, or the whole sphere / the empty set.
AvResult algorithm_Av(const GOracle& oracle, const UnitVector& v,
                      double tol = kDefaultBisectionTol);

// Intersection of A_v over the grid.
CapSet algorithm_estimate(const GOracle& oracle, std::span<const UnitVector> grid,
                          double tol = kDefaultBisectionTol);

struct RiskRanking {
  std::vector<EstimateS> levels;
  std::vector<double> removed_fractions;
  std::vector<std::size_t> sample_sizes;
  std::string stop_reason;
};

inline constexpr std::size_t kMinRankingSample = 1000;

// Level j + 1 is scanned on the observations outside levels 1..j and is
// made disjoint from them.
RiskRanking risk_ranking(const PolarSample& s, const DetectorConfig& cfg,
                         int max_levels);

}  // namespace riskdir

#endif  // RISKDIR_DETECTOR_H_
