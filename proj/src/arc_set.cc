#include "riskdir/arc_set.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "riskdir/error.h"
#include "riskdir/sphere.h"

namespace riskdir {

ArcSet ArcSet::full() {
  ArcSet s;
  s.uniform_ = true;
  return s;
}

ArcSet ArcSet::interval(double lo, double hi, bool lo_closed, bool hi_closed) {
  const double length = hi - lo;
  if (!(length >= 0.0) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::kInvalidArgument, "arc needs finite lo <= hi");
  }
  if (length > kTwoPi) return full();
  const double nlo = normalize_angle(lo);
  const double nhi = normalize_angle(hi);
  ArcSet s;
  if (length == kTwoPi || (nlo == nhi && length > kPi)) {
    // Circle with at most the seam point missing.
    s.breaks_ = {nlo};
    s.at_ = {static_cast<char>(lo_closed || hi_closed)};
    s.after_ = {1};
    s.canonicalize();
    return s;
  }
  if (nlo == nhi) {
    if (lo_closed && hi_closed) {
      s.breaks_ = {nlo};
      s.at_ = {1};
      s.after_ = {0};
    }
    return s;
  }
  if (nlo < nhi) {
    s.breaks_ = {nlo, nhi};
    s.at_ = {static_cast<char>(lo_closed), static_cast<char>(hi_closed)};
    s.after_ = {1, 0};
  } else {
    s.breaks_ = {nhi, nlo};
    s.at_ = {static_cast<char>(hi_closed), static_cast<char>(lo_closed)};
    s.after_ = {0, 1};
  }
  s.canonicalize();
  return s;
}

ArcSet ArcSet::ball(double center, double radius, bool closed) {
  if (!(radius >= 0.0 && radius <= kPi)) {
    throw Error(ErrorCode::kInvalidArgument, "arc ball radius outside [0, pi]");
  }
  if (radius == kPi && closed) return full();
  return interval(center - radius, center + radius, closed, closed);
}

bool ArcSet::contains(double theta) const {
  if (breaks_.empty()) return uniform_;
  const double t = normalize_angle(theta);
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  if (it == breaks_.begin()) return after_.back();
  const auto i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  if (breaks_[i] == t) return at_[i];
  return after_[i];
}

ArcSet ArcSet::combine(const ArcSet& other, Op op) const {
  auto apply = [op](bool a, bool b) {
    switch (op) {
      case Op::kUnion: return a || b;
      case Op::kIntersect: return a && b;
      case Op::kSubtract: return a && !b;
    }
    return false;
  };
  ArcSet out;
  std::merge(breaks_.begin(), breaks_.end(), other.breaks_.begin(),
             other.breaks_.end(), std::back_inserter(out.breaks_));
  out.breaks_.erase(std::unique(out.breaks_.begin(), out.breaks_.end()),
                    out.breaks_.end());
  if (out.breaks_.empty()) {
    out.uniform_ = apply(uniform_, other.uniform_);
    return out;
  }
  const std::size_t m = out.breaks_.size();
  out.at_.resize(m);
  out.after_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double b = out.breaks_[i];
    out.at_[i] = apply(contains(b), other.contains(b));
    const double next = (i + 1 < m) ? out.breaks_[i + 1] : out.breaks_[0] + kTwoPi;
    const double mid = normalize_angle(0.5 * (b + next));
    out.after_[i] = apply(contains(mid), other.contains(mid));
  }
  out.canonicalize();
  return out;
}

void ArcSet::canonicalize() {
  const std::size_t m = breaks_.size();
  if (m == 0) return;
  std::vector<double> breaks;
  std::vector<char> at;
  std::vector<char> after;
  for (std::size_t i = 0; i < m; ++i) {
    const char prev = after_[(i + m - 1) % m];
    if (at_[i] == prev && at_[i] == after_[i]) continue;
    breaks.push_back(breaks_[i]);
    at.push_back(at_[i]);
    after.push_back(after_[i]);
  }
  if (breaks.empty()) uniform_ = after_[0] != 0;
  breaks_ = std::move(breaks);
  at_ = std::move(at);
  after_ = std::move(after);
}

ArcSet ArcSet::unite(const ArcSet& other) const {
  return combine(other, Op::kUnion);
}

ArcSet ArcSet::intersect(const ArcSet& other) const {
  return combine(other, Op::kIntersect);
}

ArcSet ArcSet::subtract(const ArcSet& other) const {
  return combine(other, Op::kSubtract);
}

ArcSet ArcSet::complement() const {
  ArcSet out = *this;
  out.uniform_ = !uniform_;
  for (auto& v : out.at_) v = !v;
  for (auto& v : out.after_) v = !v;
  return out;
}

ArcSet ArcSet::closure() const {
  ArcSet out = *this;
  const std::size_t m = breaks_.size();
  for (std::size_t i = 0; i < m; ++i) {
    out.at_[i] = at_[i] || after_[i] || after_[(i + m - 1) % m];
  }
  out.canonicalize();
  return out;
}

ArcSet ArcSet::swell(double delta) const {
  if (!(delta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "swelling radius must be positive");
  }
  if (is_empty() || is_full()) return *this;
  ArcSet out;
  for (const Arc& c : components()) {
    out = out.unite(interval(c.lo - delta, c.hi + delta, false, false));
  }
  return out;
}

double ArcSet::measure() const {
  if (breaks_.empty()) return uniform_ ? kTwoPi : 0.0;
  const std::size_t m = breaks_.size();
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!after_[i]) continue;
    const double next = (i + 1 < m) ? breaks_[i + 1] : breaks_[0] + kTwoPi;
    total += next - breaks_[i];
  }
  return total;
}

std::vector<ArcSet::Arc> ArcSet::components() const {
  if (breaks_.empty()) {
    if (uniform_) return {Arc{0.0, kTwoPi, true, true}};
    return {};
  }
  // Walk the alternating sequence point_0, gap_0, point_1, gap_1, ... where
  // gap_i is the open interval after breaks_[i].
  const std::size_t m = breaks_.size();
  const std::size_t atoms = 2 * m;
  auto in = [&](std::size_t k) {
    k %= atoms;
    return (k % 2 == 0) ? at_[k / 2] != 0 : after_[k / 2] != 0;
  };
  // Unwrapped coordinate of breakpoint index j (j may run past m).
  auto pos = [&](std::size_t j) {
    return breaks_[j % m] + kTwoPi * static_cast<double>(j / m);
  };
  std::size_t start = 0;
  while (start < atoms && in(start)) ++start;
  // Canonical form guarantees some atom is outside the set.
  std::vector<Arc> out;
  bool open_run = false;
  Arc cur;
  for (std::size_t step = 1; step <= atoms; ++step) {
    const std::size_t k = start + step;
    const bool inside = in(k);
    const bool is_point = (k % 2 == 0);
    const std::size_t j = k / 2;
    if (inside && !open_run) {
      open_run = true;
      cur.lo = pos(j);
      cur.lo_closed = is_point;
    } else if (!inside && open_run) {
      open_run = false;
      // Previous atom ended the run.
      const std::size_t pk = k - 1;
      if (pk % 2 == 0) {
        cur.hi = pos(pk / 2);
        cur.hi_closed = true;
      } else {
        cur.hi = pos(pk / 2 + 1);
        cur.hi_closed = false;
      }
      const double shift = cur.lo - normalize_angle(cur.lo);
      cur.lo -= shift;
      cur.hi -= shift;
      out.push_back(cur);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Arc& a, const Arc& b) { return a.lo < b.lo; });
  return out;
}

double arc_directed_hausdorff(const ArcSet& a, const ArcSet& b) {
  const ArcSet ca = a.closure();
  const ArcSet cb = b.closure();
  if (ca.is_empty() || cb.is_empty()) {
    throw Error(ErrorCode::kEmptySet, "Hausdorff distance of an empty set");
  }
  if (cb.is_full()) return 0.0;
  const std::vector<ArcSet::Arc> pieces = cb.components();
  auto dist_to_b = [&](double theta) {
    if (cb.contains(theta)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pieces) {
      best = std::min({best, circle_dist(theta, p.lo), circle_dist(theta, p.hi)});
    }
    return best;
  };
  double worst = 0.0;
  if (!ca.is_full()) {
    for (const auto& c : ca.components()) {
      worst = std::max({worst, dist_to_b(c.lo), dist_to_b(c.hi)});
    }
  }
  for (const auto& gap : cb.complement().components()) {
    const double mid = 0.5 * (gap.lo + gap.hi);
    if (ca.contains(mid)) worst = std::max(worst, dist_to_b(mid));
  }
  return worst;
}

double arc_hausdorff(const ArcSet& a, const ArcSet& b) {
  return std::max(arc_directed_hausdorff(a, b), arc_directed_hausdorff(b, a));
}

}  // namespace riskdir
