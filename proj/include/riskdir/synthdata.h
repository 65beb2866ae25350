#ifndef RISKDIR_SYNTHDATA_H_
#define RISKDIR_SYNTHDATA_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "riskdir/cap_set.h"
#include "riskdir/sphere.h"
#include "riskdir/tail_stats.h"

namespace riskdir {

// Right-unbounded radial law with a closed-form tail.
//   Pareto(alpha, x_m):     P(R > k) = (k / x_m)^-alpha,   k >= x_m
//   Weibull(beta, lambda):  P(R > k) = exp(-lambda k^beta)
//   LogNormal(mu, sigma):   log R ~ N(mu, sigma^2)
struct RadialLaw {
  enum class Family { kPareto, kWeibull, kLogNormal };
  Family family = Family::kPareto;
  double p1 = 2.0;  // alpha | beta | mu
  double p2 = 1.0;  // x_m   | lambda | sigma

  static RadialLaw pareto(double alpha, double x_m);
  static RadialLaw weibull(double beta, double lambda);
  static RadialLaw lognormal(double mu, double sigma);

  void validate() const;
  double survival(double k) const;
  // -log P(R > k).
  double hazard(double k) const;
  // R with P(R > value) = u, for u in (0, 1].
  double from_survival(double u) const;
  std::string describe() const;

  bool operator==(const RadialLaw&) const = default;
};

// lim_{k -> inf} hazard_a(k) / hazard_b(k), possibly +inf. Throws
// kUnsupported where the families do not admit a closed-form limit here.
double tail_ratio(const RadialLaw& a, const RadialLaw& b);

struct Cone {
  CapSet region;
  double weight = 0.0;
  RadialLaw law;
};

// Directions uniform within each region, radii independent per region.
struct ConeMixtureModel {
  std::size_t dim = 2;
  std::vector<Cone> cones;

  void validate() const;
  // Index of the cone with the slowest-growing hazard.
  std::size_t dominant_cone() const;
};

// Circle split into equal sectors [2 pi j / m, 2 pi (j + 1) / m), weight 1/m.
ConeMixtureModel sector_model(const std::vector<RadialLaw>& laws);

// Eight sectors, `heavy` on sectors 0 and 4 (centered at pi/8 and 9pi/8),
// `light` elsewhere.
ConeMixtureModel eight_cone_model(const RadialLaw& heavy, const RadialLaw& light);

// Light Weibull rate used by the default eight-cone preset. With rate 1 the
// Weibull(0.5) sectors dominate the top 0.5% of radii for n around 1e5.
inline constexpr double kDefaultLightWeibullRate = 4.0;

ConeMixtureModel default_eight_cone_model(
    double light_weibull_rate = kDefaultLightWeibullRate);

// Pareto(2) on sectors 0 and 4, Pareto(alpha_light) elsewhere.
ConeMixtureModel pareto_gap_model(double alpha_light);

// Pareto(2) on sector 0, Pareto(2.5) on sector 4, `light` elsewhere.
ConeMixtureModel three_tier_model(const RadialLaw& light);

// An atom of angular mass `atom_weight` at `atom` carrying `atom_law`,
// uniform directions with `rest_law` elsewhere.
ConeMixtureModel singleton_model(const UnitVector& atom, double atom_weight,
                                 const RadialLaw& atom_law,
                                 const RadialLaw& rest_law);

// Atom at angle pi/3 of weight 0.05 with Pareto(2, 1) radii over a uniform
// Weibull(0.5, kSingletonRestRate) continuum.
inline constexpr double kSingletonRestRate = 3.3;
ConeMixtureModel default_singleton_model();

PolarSample sample_cone_mixture(const ConeMixtureModel& model, std::size_t n,
                                std::uint64_t seed);

// Raw vectors X_i = R_i U_i of a sample.
std::vector<std::vector<double>> to_rows(const PolarSample& s);

// Uniform direction inside a cap of the given radius around center.
UnitVector sample_in_cap(const UnitVector& center, double radius,
                         std::mt19937_64& rng);

UnitVector sample_uniform_sphere(std::size_t dim, std::mt19937_64& rng);

// Each direction replaced by a uniform draw from the ball of `radius`
// around it; radii unchanged. radius in (0, pi/8].
PolarSample perturb_directions(const PolarSample& s, double radius,
                               std::uint64_t seed);

// Limit G(A) of the model. For d = 2 overlaps are exact arc lengths. For
// d > 2 they are exact when both sets are plain unions of caps; otherwise a
// region overlaps A when one of `mc_samples` fixed draws from it falls in A.
class AnalyticG {
 public:
  explicit AnalyticG(ConeMixtureModel model, int mc_samples = 20000,
                     std::uint64_t seed = 7);

  double operator()(const CapSet& a) const;
  const ConeMixtureModel& model() const { return model_; }
  // Limit hazard ratio of each cone against the dominant law.
  const std::vector<double>& ratios() const { return ratios_; }

 private:
  bool overlaps(std::size_t cone, const CapSet& a) const;

  ConeMixtureModel model_;
  std::vector<double> ratios_;
  std::vector<std::vector<UnitVector>> samples_;
};

double analytic_G(const ConeMixtureModel& model, const CapSet& a);

// Closure of the union of the regions whose law has the dominant tail.
CapSet true_S(const ConeMixtureModel& model);

// Elliptical vector X = Z A^T with Z spherical. The conditional risk in
// direction u is c(u) h(k) with c(u) = sigma_max(A) * ||A^{-1} u|| (the
// inverse of the ellipse's radial function, scaled so min c = 1), times
// `c_multiplier`.
struct EllipticalModel {
  std::vector<std::vector<double>> axis_matrix;
  RadialLaw base;
  double c_multiplier = 1.0;

  std::size_t dim() const { return axis_matrix.size(); }
};

double elliptical_c(const EllipticalModel& model, const UnitVector& u);

PolarSample sample_elliptical(const EllipticalModel& model, std::size_t n,
                              std::uint64_t seed);

}  // namespace riskdir

#endif  // RISKDIR_SYNTHDATA_H_
