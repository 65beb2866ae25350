#include "riskdir/cap_set.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "riskdir/error.h"

namespace riskdir {

namespace {

bool negative_free(const CapSet& s) {
  return std::all_of(s.negative().begin(), s.negative().end(),
                     [](const GeodesicBall& b) { return b.is_empty(); });
}

std::vector<GeodesicBall> balls_from_arcs(const ArcSet& arcs) {
  std::vector<GeodesicBall> out;
  if (arcs.is_full()) {
    out.push_back(GeodesicBall::whole(2));
    return out;
  }
  for (const ArcSet::Arc& c : arcs.components()) {
    const double half = 0.5 * c.length();
    if (half == 0.0) {
      out.push_back(GeodesicBall::closed_ball(UnitVector::from_angle(c.lo), 0.0));
      continue;
    }
    const UnitVector mid = UnitVector::from_angle(c.lo + half);
    const double radius = std::min(half, kPi);
    if (c.lo_closed && c.hi_closed) {
      out.push_back(GeodesicBall::closed_ball(mid, radius));
    } else {
      out.push_back(GeodesicBall::open(mid, radius));
      if (c.lo_closed) {
        out.push_back(GeodesicBall::closed_ball(UnitVector::from_angle(c.lo), 0.0));
      }
      if (c.hi_closed) {
        out.push_back(GeodesicBall::closed_ball(UnitVector::from_angle(c.hi), 0.0));
      }
    }
  }
  return out;
}

double directed_sampled(const std::vector<UnitVector>& from,
                        const std::vector<UnitVector>& to) {
  double worst = 0.0;
  for (const auto& a : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : to) {
      best = std::min(best, geodesic_dist(a, b));
      if (best == 0.0) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

ArcSet ball_to_arcs(const GeodesicBall& ball) {
  if (ball.dim() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "arc form requires d = 2");
  }
  return ArcSet::ball(ball.center().angle(), ball.radius(), ball.closed());
}

CapSet::CapSet(std::size_t dim, std::vector<GeodesicBall> positive,
               std::vector<GeodesicBall> negative)
    : dim_(dim), positive_(std::move(positive)), negative_(std::move(negative)) {
  if (dim_ < 2) throw Error(ErrorCode::kInvalidArgument, "cap set needs d >= 2");
  for (const auto& b : positive_) check_dim(b.dim());
  for (const auto& b : negative_) check_dim(b.dim());
  if (dim_ == 2) {
    ArcSet pos;
    for (const auto& b : positive_) pos = pos.unite(ball_to_arcs(b));
    ArcSet neg;
    for (const auto& b : negative_) neg = neg.unite(ball_to_arcs(b));
    arcs_ = pos.subtract(neg);
  }
}

void CapSet::check_dim(std::size_t other) const {
  if (other != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cap set of dimension " + std::to_string(dim_) +
                    " mixed with dimension " + std::to_string(other));
  }
}

CapSet CapSet::empty(std::size_t dim) { return CapSet(dim, {}, {}); }

CapSet CapSet::full(std::size_t dim) {
  return CapSet(dim, {GeodesicBall::whole(dim)}, {});
}

CapSet CapSet::from_ball(const GeodesicBall& ball) {
  return CapSet(ball.dim(), {ball}, {});
}

CapSet CapSet::from_balls(std::vector<GeodesicBall> positive,
                          std::vector<GeodesicBall> negative, std::size_t dim) {
  return CapSet(dim, std::move(positive), std::move(negative));
}

CapSet::CapSet(std::vector<GeodesicBall> positive, ArcSet arcs)
    : dim_(2), positive_(std::move(positive)), arcs_(std::move(arcs)), arc_primary_(true) {}

// The arcs are kept verbatim; the rebuilt balls reproduce them up to rounding
// of the endpoints.
CapSet CapSet::from_arcs(const ArcSet& arcs) {
  return CapSet(balls_from_arcs(arcs), arcs);
}

CapSet CapSet::intersect_balls(std::span<const GeodesicBall> balls,
                               std::size_t dim) {
  if (dim == 2) {
    ArcSet acc = ArcSet::full();
    for (const auto& b : balls) {
      if (b.dim() != 2) throw Error(ErrorCode::kDimensionMismatch, "ball dimension");
      acc = acc.intersect(ball_to_arcs(b));
    }
    return from_arcs(acc);
  }
  std::vector<GeodesicBall> removed;
  for (const auto& b : balls) {
    if (b.dim() != dim) throw Error(ErrorCode::kDimensionMismatch, "ball dimension");
    if (b.is_empty()) return empty(dim);
    if (b.is_full()) continue;
    removed.push_back(ball_complement(b));
  }
  if (removed.empty()) return full(dim);
  return CapSet(dim, {GeodesicBall::whole(dim)}, std::move(removed));
}

bool CapSet::contains(const UnitVector& x) const {
  check_dim(x.dim());
  if (arc_primary_) return arcs_->contains(x.angle());
  bool in = false;
  for (const auto& b : positive_) {
    if (b.contains(x)) {
      in = true;
      break;
    }
  }
  if (!in) return false;
  for (const auto& b : negative_) {
    if (b.contains(x)) return false;
  }
  return true;
}

bool CapSet::is_empty() const {
  if (arcs_) return arcs_->is_empty();
  return std::all_of(positive_.begin(), positive_.end(),
                     [](const GeodesicBall& b) { return b.is_empty(); });
}

bool CapSet::is_full() const {
  if (arcs_) return arcs_->is_full();
  const bool any_full = std::any_of(positive_.begin(), positive_.end(),
                                    [](const GeodesicBall& b) { return b.is_full(); });
  return any_full && negative_free(*this);
}

const ArcSet& CapSet::arcs() const {
  if (!arcs_) throw Error(ErrorCode::kUnsupported, "arc form requires d = 2");
  return *arcs_;
}

CapSet CapSet::unite(const CapSet& other) const {
  check_dim(other.dim_);
  if (arc_primary_ || other.arc_primary_) return from_arcs(arcs_->unite(*other.arcs_));
  if (negative_free(*this) && negative_free(other)) {
    std::vector<GeodesicBall> pos = positive_;
    pos.insert(pos.end(), other.positive_.begin(), other.positive_.end());
    return CapSet(dim_, std::move(pos), {});
  }
  if (dim_ == 2) return from_arcs(arcs_->unite(*other.arcs_));
  if (other.is_empty()) return *this;
  if (is_empty()) return other;
  throw Error(ErrorCode::kUnsupported,
              "union of cap differences is not representable for d > 2");
}

CapSet CapSet::subtract(const CapSet& other) const {
  check_dim(other.dim_);
  if (arc_primary_ || other.arc_primary_) return from_arcs(arcs_->subtract(*other.arcs_));
  if (negative_free(other)) {
    std::vector<GeodesicBall> neg = negative_;
    neg.insert(neg.end(), other.positive_.begin(), other.positive_.end());
    return CapSet(dim_, positive_, std::move(neg));
  }
  if (dim_ == 2) return from_arcs(arcs_->subtract(*other.arcs_));
  throw Error(ErrorCode::kUnsupported,
              "subtracting a cap difference is not representable for d > 2");
}

CapSet CapSet::complement() const {
  if (dim_ == 2) return from_arcs(arcs_->complement());
  if (negative_free(*this)) {
    std::vector<GeodesicBall> pos;
    for (const auto& b : positive_) {
      if (!b.is_empty()) pos.push_back(b);
    }
    if (pos.empty()) return full(dim_);
    if (pos.size() == 1) return from_ball(ball_complement(pos.front()));
    return CapSet(dim_, {GeodesicBall::whole(dim_)}, std::move(pos));
  }
  if (positive_.size() == 1 && positive_.front().is_full()) {
    return CapSet(dim_, negative_, {});
  }
  throw Error(ErrorCode::kUnsupported,
              "complement of a general cap difference for d > 2");
}

CapSet CapSet::closure() const {
  if (dim_ == 2) return from_arcs(arcs_->closure());
  // cl(P \ N) is contained in cl(P) \ int(N); the latter is returned.
  std::vector<GeodesicBall> pos;
  for (const auto& b : positive_) {
    if (!b.is_empty()) pos.emplace_back(b.center(), b.radius(), true);
  }
  std::vector<GeodesicBall> neg;
  for (const auto& b : negative_) {
    if (b.radius() > 0.0) neg.emplace_back(b.center(), b.radius(), false);
  }
  return CapSet(dim_, std::move(pos), std::move(neg));
}

CapSet swell(const CapSet& a, double delta) {
  if (!(delta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "swelling radius must be positive");
  }
  if (a.dim() == 2) return CapSet::from_arcs(a.arcs().swell(delta));
  std::vector<GeodesicBall> pos;
  for (const auto& b : a.positive()) {
    if (b.is_empty()) continue;
    const double r = b.radius() + delta;
    if (r > kPi) {
      pos.push_back(GeodesicBall::whole(a.dim()));
    } else {
      pos.push_back(GeodesicBall::open(b.center(), r));
    }
  }
  std::vector<GeodesicBall> neg;
  for (const auto& b : a.negative()) {
    const double r = b.radius() - delta;
    if (r >= 0.0) neg.push_back(GeodesicBall::closed_ball(b.center(), r));
  }
  return CapSet::from_balls(std::move(pos), std::move(neg), a.dim());
}

double hausdorff_dist(const CapSet& a, const CapSet& b, int resolution) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "Hausdorff of different dimensions");
  }
  if (a.dim() == 2) return arc_hausdorff(a.arcs(), b.arcs());
  const auto grid = direction_grid(static_cast<int>(a.dim()), resolution);
  auto sample = [&](const CapSet& s) {
    std::vector<UnitVector> pts;
    for (const auto& g : grid) {
      if (s.contains(g)) pts.push_back(g);
    }
    for (const auto& ball : s.positive()) {
      if (s.contains(ball.center())) pts.push_back(ball.center());
    }
    if (pts.empty()) {
      throw Error(ErrorCode::kEmptySet,
                  "Hausdorff distance of an empty (or unresolved) set");
    }
    return pts;
  };
  const auto sa = sample(a);
  const auto sb = sample(b);
  return std::max(directed_sampled(sa, sb), directed_sampled(sb, sa));
}

}  // namespace riskdir
