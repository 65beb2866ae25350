#ifndef RISKDIR_CAP_SET_H_
#define RISKDIR_CAP_SET_H_

#include <optional>
#include <span>
#include <vector>

#include "riskdir/arc_set.h"
#include "riskdir/sphere.h"

namespace riskdir {

// (union of positive balls) \ (union of negative balls) on S^{dim-1}.
//
// For dim = 2 the set additionally carries its canonical ArcSet. Operations
// that a ball pair list cannot express exactly on the circle (complements of
// differences, intersections) are evaluated on the arcs and the ball lists are
// rebuilt from the resulting arcs, so both forms always describe the same
// set. In higher dimensions only the operations with an exact ball-list
// encoding are available; the others raise ErrorCode::kUnsupported.
class CapSet {
 public:
  static CapSet empty(std::size_t dim);
  static CapSet full(std::size_t dim);
  static CapSet from_ball(const GeodesicBall& ball);
  static CapSet from_balls(std::vector<GeodesicBall> positive,
                           std::vector<GeodesicBall> negative, std::size_t dim);
  static CapSet from_arcs(const ArcSet& arcs);

  // Intersection of finitely many balls. An empty list yields the sphere.
  static CapSet intersect_balls(std::span<const GeodesicBall> balls,
                                std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::vector<GeodesicBall>& positive() const { return positive_; }
  const std::vector<GeodesicBall>& negative() const { return negative_; }

  bool contains(const UnitVector& x) const;

  // Exact for dim = 2. For dim > 2 this only detects sets with no non-empty
  // positive ball.
  bool is_empty() const;
  bool is_full() const;

  bool has_arcs() const { return arcs_.has_value(); }
  // Canonical arc form; dim = 2 only.
  const ArcSet& arcs() const;

  CapSet unite(const CapSet& other) const;
  CapSet subtract(const CapSet& other) const;
  CapSet complement() const;
  CapSet closure() const;

 private:
  CapSet(std::size_t dim, std::vector<GeodesicBall> positive,
         std::vector<GeodesicBall> negative);
  CapSet(std::vector<GeodesicBall> positive, ArcSet arcs);
  void check_dim(std::size_t other) const;

  std::size_t dim_ = 2;
  std::vector<GeodesicBall> positive_;
  std::vector<GeodesicBall> negative_;
  std::optional<ArcSet> arcs_;
  // Built from arcs: membership is read off the arcs, which are exact.
  bool arc_primary_ = false;
};

ArcSet ball_to_arcs(const GeodesicBall& ball);

// Geodesic delta-swelling {x : dist(x, a) < delta}. Exact on the circle; in
// higher dimensions positive radii grow by delta and negative radii shrink by
// delta.
CapSet swell(const CapSet& a, double delta);

inline constexpr int kDefaultHausdorffResolution = 4000;

// Hausdorff distance between the closures of two non-empty sets. Exact for
// dim = 2. For dim > 2 both sets are sampled on a quasi-uniform grid of
// `resolution` directions (plus their ball centers) and the discrete max-min
// distance is returned; the error is of the order of the grid spacing.
double hausdorff_dist(const CapSet& a, const CapSet& b,
                      int resolution = kDefaultHausdorffResolution);

}  // namespace riskdir

#endif  // RISKDIR_CAP_SET_H_
