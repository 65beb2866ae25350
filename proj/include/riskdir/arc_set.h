#ifndef RISKDIR_ARC_SET_H_
#define RISKDIR_ARC_SET_H_

#include <vector>

namespace riskdir {

// A subset of the circle S^1 described by finitely many breakpoints in
// [0, 2pi). Membership is constant on each open interval between consecutive
// breakpoints and stored separately at every breakpoint, so open, closed and
// half-open arcs as well as isolated points are represented exactly.
// Instances are kept in canonical form: no breakpoint is redundant.
class ArcSet {
 public:
  struct Arc {
    double lo = 0.0;  // in [0, 2pi)
    double hi = 0.0;  // lo <= hi <= lo + 2pi
    bool lo_closed = true;
    bool hi_closed = true;
    double length() const { return hi - lo; }
    bool operator==(const Arc&) const = default;
  };

  ArcSet() = default;

  static ArcSet empty() { return ArcSet(); }
  static ArcSet full();
  // Arc from lo counter-clockwise to hi. Lengths above 2pi give the circle.
  static ArcSet interval(double lo, double hi, bool lo_closed, bool hi_closed);
  // Geodesic ball on the circle centered at angle `center`.
  static ArcSet ball(double center, double radius, bool closed);

  bool contains(double theta) const;
  bool is_empty() const { return breaks_.empty() && !uniform_; }
  bool is_full() const { return breaks_.empty() && uniform_; }

  ArcSet unite(const ArcSet& other) const;
  ArcSet intersect(const ArcSet& other) const;
  ArcSet subtract(const ArcSet& other) const;
  ArcSet complement() const;
  ArcSet closure() const;
  // Open delta-neighbourhood {x : dist(x, A) < delta}.
  ArcSet swell(double delta) const;

  // Total length of the set.
  double measure() const;

  // Maximal connected pieces, counter-clockwise from the smallest start.
  // The full circle is reported as a single arc [0, 2pi].
  std::vector<Arc> components() const;

  bool operator==(const ArcSet&) const = default;

 private:
  enum class Op { kUnion, kIntersect, kSubtract };
  ArcSet combine(const ArcSet& other, Op op) const;
  void canonicalize();

  bool uniform_ = false;         // membership everywhere when breaks_ is empty
  std::vector<double> breaks_;   // strictly increasing, in [0, 2pi)
  std::vector<char> at_;         // membership at breaks_[i]
  std::vector<char> after_;      // membership on (breaks_[i], breaks_[i+1])
};

// Hausdorff distance between the closures of two non-empty arc sets.
double arc_hausdorff(const ArcSet& a, const ArcSet& b);

// sup over x in cl(a) of dist(x, cl(b)).
double arc_directed_hausdorff(const ArcSet& a, const ArcSet& b);

}  // namespace riskdir

#endif  // RISKDIR_ARC_SET_H_
