#ifndef RISKDIR_SPHERE_H_
#define RISKDIR_SPHERE_H_

#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace riskdir {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerance on the l2 norm of a stored direction.
inline constexpr double kUnitTolerance = 1e-9;

// A point on S^{d-1}, d >= 2. Construction renormalizes to unit l2 length.
class UnitVector {
 public:
  explicit UnitVector(std::vector<double> coords);
  UnitVector(std::initializer_list<double> coords)
      : UnitVector(std::vector<double>(coords)) {}

  // Point (cos theta, sin theta) on the circle.
  static UnitVector from_angle(double theta);

  std::size_t dim() const { return coords_.size(); }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  UnitVector operator-() const;

  // Polar angle in [0, 2pi). Only defined for d = 2.
  double angle() const;

  bool operator==(const UnitVector&) const = default;

 private:
  struct Unchecked {};
  UnitVector(Unchecked, std::vector<double> coords)
      : coords_(std::move(coords)) {}

  std::vector<double> coords_;
};

double dot(const UnitVector& x, const UnitVector& y);

// Great-circle distance in [0, pi]. Throws on dimension mismatch.
double geodesic_dist(const UnitVector& x, const UnitVector& y);

// Open ball B(center, radius) or closed ball cl B(center, radius).
// A closed ball of radius 0 is the singleton {center}; an open ball of
// radius 0 is empty; a closed ball of radius pi is the whole sphere.
class GeodesicBall {
 public:
  GeodesicBall(UnitVector center, double radius, bool closed);

  static GeodesicBall open(UnitVector center, double radius) {
    return GeodesicBall(std::move(center), radius, false);
  }
  static GeodesicBall closed_ball(UnitVector center, double radius) {
    return GeodesicBall(std::move(center), radius, true);
  }
  static GeodesicBall whole(std::size_t dim);

  const UnitVector& center() const { return center_; }
  double radius() const { return radius_; }
  bool closed() const { return closed_; }
  std::size_t dim() const { return center_.dim(); }

  bool contains(const UnitVector& y) const;
  bool is_empty() const { return radius_ == 0.0 && !closed_; }
  bool is_full() const { return radius_ == kPi && closed_; }

  bool operator==(const GeodesicBall&) const = default;

 private:
  friend GeodesicBall ball_complement(const GeodesicBall& b);
  struct Flipped {};
  GeodesicBall(Flipped, const GeodesicBall& b);

  UnitVector center_;
  double radius_;
  bool closed_;
  // Membership compares distances against min(r, pi - r), measured from the
  // center or from its antipode. A ball and its complement then share the
  // same comparison and partition the sphere bit-exactly.
  double side_;
  bool large_;
};

// B(x, r) <-> cl B(-x, pi - r). The closed flag flips; the two balls
// partition the sphere.
GeodesicBall ball_complement(const GeodesicBall& b);

// Point at distance t from x on the minimizing geodesic toward target.
// Requires x != +-target and t in [0, dist(x, target)].
UnitVector geodesic_point_between(const UnitVector& x, const UnitVector& target,
                                  double t);

inline constexpr std::uint64_t kDefaultGridSeed = 0x5eed;

// d = 2: m equally spaced angles starting at 0. d = 3: Fibonacci lattice.
// d > 3: m normalized Gaussian draws from a seeded generator.
std::vector<UnitVector> direction_grid(int d, int m,
                                       std::uint64_t seed = kDefaultGridSeed);

// Wraps an angle into [0, 2pi).
double normalize_angle(double theta);

// Shortest angular separation of two angles on the circle, in [0, pi].
double circle_dist(double a, double b);

}  // namespace riskdir

#endif  // RISKDIR_SPHERE_H_
