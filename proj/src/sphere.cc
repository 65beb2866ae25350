#include "riskdir/sphere.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "riskdir/error.h"

namespace riskdir {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kEmptySet: return "empty set";
    case ErrorCode::kNoExceedances: return "no exceedances";
    case ErrorCode::kAllExceed: return "all observations exceed threshold";
    case ErrorCode::kInsufficientData: return "insufficient data";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kNonMonotoneOracle: return "non-monotone oracle";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kIo: return "i/o error";
  }
  return "unknown";
}

namespace {

void check_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kDimensionMismatch,
                "dimension mismatch: " + std::to_string(a) + " vs " +
                    std::to_string(b));
  }
}

double squared_norm_diff(std::span<const double> x, std::span<const double> y,
                         double sign) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - sign * y[i];
    s += d * d;
  }
  return s;
}

}  // namespace

UnitVector::UnitVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "unit vector needs d >= 2");
  }
  double s = 0.0;
  for (double c : coords_) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite coordinate");
    }
    s += c * c;
  }
  if (s == 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "zero vector has no direction");
  }
  const double norm = std::sqrt(s);
  if (norm != 1.0) {
    for (double& c : coords_) c /= norm;
  }
}

UnitVector UnitVector::from_angle(double theta) {
  return UnitVector(Unchecked{}, {std::cos(theta), std::sin(theta)});
}

UnitVector UnitVector::operator-() const {
  std::vector<double> neg(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) neg[i] = -coords_[i];
  return UnitVector(Unchecked{}, std::move(neg));
}

double UnitVector::angle() const {
  if (dim() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "angle() requires d = 2");
  }
  return normalize_angle(std::atan2(coords_[1], coords_[0]));
}

double dot(const UnitVector& x, const UnitVector& y) {
  check_same_dim(x.dim(), y.dim());
  double s = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) s += x[i] * y[i];
  return s;
}

double geodesic_dist(const UnitVector& x, const UnitVector& y) {
  // arccos(x.y) evaluated through the chord lengths |x - y| and |x + y|,
  // which stays accurate near 0 and pi. Negating x swaps the two branches
  // bit-exactly, so dist(-x, y) == pi - dist(x, y) up to one rounding of the
  // subtraction.
  const double t = dot(x, y);
  if (t >= 0.0) {
    const double chord = std::sqrt(squared_norm_diff(x.coords(), y.coords(), 1.0));
    return 2.0 * std::asin(std::min(1.0, 0.5 * chord));
  }
  const double chord = std::sqrt(squared_norm_diff(x.coords(), y.coords(), -1.0));
  return kPi - 2.0 * std::asin(std::min(1.0, 0.5 * chord));
}

GeodesicBall::GeodesicBall(UnitVector center, double radius, bool closed)
    : center_(std::move(center)), radius_(radius), closed_(closed) {
  if (!(radius >= 0.0 && radius <= kPi)) {
    throw Error(ErrorCode::kInvalidArgument,
                "ball radius must lie in [0, pi], got " + std::to_string(radius));
  }
  large_ = radius > kPi / 2;
  side_ = large_ ? kPi - radius : radius;  // exact for radius >= pi/2 (Sterbenz)
}

GeodesicBall::GeodesicBall(Flipped, const GeodesicBall& b)
    : center_(-b.center_),
      radius_(b.large_ ? b.side_ : kPi - b.side_),
      closed_(!b.closed_),
      side_(b.side_),
      large_(!b.large_) {}

GeodesicBall GeodesicBall::whole(std::size_t dim) {
  std::vector<double> e(dim, 0.0);
  if (dim >= 1) e[0] = 1.0;
  return GeodesicBall(UnitVector(std::move(e)), kPi, true);
}

bool GeodesicBall::contains(const UnitVector& y) const {
  if (is_full()) {
    check_same_dim(dim(), y.dim());
    return true;
  }
  if (!large_) {
    const double d = geodesic_dist(center_, y);
    return closed_ ? d <= side_ : d < side_;
  }
  const double d = geodesic_dist(-center_, y);
  return closed_ ? d >= side_ : d > side_;
}

GeodesicBall ball_complement(const GeodesicBall& b) {
  return GeodesicBall(GeodesicBall::Flipped{}, b);
}

UnitVector geodesic_point_between(const UnitVector& x, const UnitVector& target,
                                  double t) {
  const double theta = geodesic_dist(x, target);
  if (theta < 1e-12 || theta > kPi - 1e-12) {
    throw Error(ErrorCode::kInvalidArgument,
                "geodesic undefined for identical or antipodal endpoints");
  }
  if (!(t >= 0.0 && t <= theta)) {
    throw Error(ErrorCode::kInvalidArgument, "t outside [0, dist(x, target)]");
  }
  if (t == 0.0) return x;
  if (t == theta) return target;
  const double s = std::sin(theta);
  const double a = std::sin(theta - t) / s;
  const double b = std::sin(t) / s;
  std::vector<double> z(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) z[i] = a * x[i] + b * target[i];
  return UnitVector(std::move(z));
}

std::vector<UnitVector> direction_grid(int d, int m, std::uint64_t seed) {
  if (d < 2 || m < 4) {
    throw Error(ErrorCode::kInvalidArgument, "direction_grid needs d >= 2, m >= 4");
  }
  std::vector<UnitVector> grid;
  grid.reserve(static_cast<std::size_t>(m));
  if (d == 2) {
    for (int j = 0; j < m; ++j) {
      grid.push_back(UnitVector::from_angle(kTwoPi * j / m));
    }
  } else if (d == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < m; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / m;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * i;
      grid.push_back(UnitVector({r * std::cos(phi), r * std::sin(phi), z}));
    }
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    while (grid.size() < static_cast<std::size_t>(m)) {
      std::vector<double> g(static_cast<std::size_t>(d));
      for (double& c : g) c = normal(rng);
      double s = 0.0;
      for (double c : g) s += c * c;
      if (s < 1e-24) continue;
      grid.push_back(UnitVector(std::move(g)));
    }
  }
  return grid;
}

double normalize_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double circle_dist(double a, double b) {
  const double d = std::abs(normalize_angle(a) - normalize_angle(b));
  return std::min(d, kTwoPi - d);
}

}  // namespace riskdir
