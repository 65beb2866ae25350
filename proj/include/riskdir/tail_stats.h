#ifndef RISKDIR_TAIL_STATS_H_
#define RISKDIR_TAIL_STATS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "riskdir/cap_set.h"
#include "riskdir/sphere.h"

namespace riskdir {

// Observations X_i = R_i U_i with R_i = ||X_i||_p > 0 and U_i the l2-normalized
// direction of X_i. Immutable after construction.
class PolarSample {
 public:
  PolarSample(std::vector<double> radii, std::vector<UnitVector> directions,
              double norm_p = 2.0);

  std::size_t size() const { return radii_.size(); }
  std::size_t dim() const { return directions_.front().dim(); }
  double norm_p() const { return norm_p_; }
  std::span<const double> radii() const { return radii_; }
  const std::vector<UnitVector>& directions() const { return directions_; }

  // Indices ordered by decreasing radius (ties by index).
  std::span<const std::size_t> sorted_index() const { return order_; }

  // j-th largest radius, 1-based.
  double radius_at_rank(std::size_t j) const;

  // #{i : R_i > k}.
  std::size_t count_exceeding(double k) const;

  // Indices of the observations with R_i > k, largest first.
  std::span<const std::size_t> exceedances(double k) const;

  PolarSample subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<double> radii_;
  std::vector<UnitVector> directions_;
  double norm_p_;
  std::vector<std::size_t> order_;
  std::vector<double> sorted_desc_;
};

double lp_norm(std::span<const double> x, double p);

// Polar decomposition of the rows of an n x d matrix under the l_p norm.
// Zero rows are rejected with their index in the message.
PolarSample polar_decompose(std::span<const std::vector<double>> rows,
                            double p = 2.0);

struct ThresholdSpec {
  enum class Kind {
    kTopFraction,  // value in (0, 1): exactly ceil(n * value) exceedances
    kAbsolute,     // value > 0: threshold k itself
  };
  Kind kind = Kind::kTopFraction;
  double value = 0.005;

  static ThresholdSpec top_fraction(double q) { return {Kind::kTopFraction, q}; }
  static ThresholdSpec absolute(double k) { return {Kind::kAbsolute, k}; }
  void validate() const;
  bool operator==(const ThresholdSpec&) const = default;
};

// Threshold k for a sample. A top fraction q resolves to the
// (ceil(n q) + 1)-th largest radius so that ceil(n q) radii exceed it.
double resolve_threshold(const PolarSample& s, const ThresholdSpec& spec);

struct HazardCurve {
  struct Knot {
    double k;
    double h;
  };
  std::vector<Knot> knots;     // h_n(k) = -log(#{R_i > k} / n)
  std::vector<double> omitted; // requested k with no exceedances
};

HazardCurve empirical_hazard(const PolarSample& s, std::span<const double> ks);

struct HeavyTailDiagnostic {
  std::size_t tail_points = 0;
  std::vector<HazardCurve::Knot> knots;
  // Least-squares slope of h_n(k)/k against k over the knots.
  double ratio_slope = 0.0;
  bool ratio_decreasing = false;
  // Share of consecutive knot slopes that drop by more than the margin.
  double concave_fraction = 0.0;
  bool concave = false;
};

// Relative drop between consecutive hazard slopes that counts as a negative
// second difference.
inline constexpr double kSlopeDropMargin = 0.1;

// Advisory check of heavy-tailedness on the top `upper_fraction` of radii.
// Knots sit at exceedance counts halving from the tail size down to 20.
HeavyTailDiagnostic heavy_tail_diagnostic(const PolarSample& s,
                                          double upper_fraction = 0.1);

inline constexpr std::size_t kMinReliableCount = 10;

struct GHat {
  double value = 0.0;           // +inf when no exceedance lies in the set
  std::size_t in_set = 0;       // #{R_i > k, U_i in A}
  std::size_t exceedances = 0;  // #{R_i > k}
};

// log(#{R_i > k, U_i in a} / n) / log(#{R_i > k} / n).
GHat g_hat_counts(const PolarSample& s, double k, const CapSet& a);
double g_hat(const PolarSample& s, double k, const CapSet& a);

}  // namespace riskdir

#endif  // RISKDIR_TAIL_STATS_H_
