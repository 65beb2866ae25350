#include "riskdir/tail_stats.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "riskdir/error.h"

namespace riskdir {

PolarSample::PolarSample(std::vector<double> radii,
                         std::vector<UnitVector> directions, double norm_p)
    : radii_(std::move(radii)), directions_(std::move(directions)),
      norm_p_(norm_p) {
  if (radii_.empty()) {
    throw Error(ErrorCode::kInsufficientData, "sample needs at least one point");
  }
  if (radii_.size() != directions_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "radii and directions differ in length");
  }
  if (!(norm_p_ >= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "norm exponent p must be >= 1");
  }
  const std::size_t d = directions_.front().dim();
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > 0.0) || !std::isfinite(radii_[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "radius " + std::to_string(i) + " is not a positive finite value");
    }
    if (directions_[i].dim() != d) {
      throw Error(ErrorCode::kDimensionMismatch, "mixed direction dimensions");
    }
  }
  order_.resize(radii_.size());
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(), [this](std::size_t a, std::size_t b) {
    return radii_[a] > radii_[b];
  });
  sorted_desc_.resize(radii_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) sorted_desc_[i] = radii_[order_[i]];
}

double PolarSample::radius_at_rank(std::size_t j) const {
  if (j < 1 || j > size()) {
    throw Error(ErrorCode::kInvalidArgument, "rank outside [1, n]");
  }
  return sorted_desc_[j - 1];
}

std::size_t PolarSample::count_exceeding(double k) const {
  // sorted_desc_ is non-increasing; count the prefix strictly above k.
  auto it = std::partition_point(sorted_desc_.begin(), sorted_desc_.end(),
                                 [k](double r) { return r > k; });
  return static_cast<std::size_t>(it - sorted_desc_.begin());
}

std::span<const std::size_t> PolarSample::exceedances(double k) const {
  return std::span<const std::size_t>(order_).first(count_exceeding(k));
}

PolarSample PolarSample::subset(std::span<const std::size_t> indices) const {
  std::vector<double> radii;
  std::vector<UnitVector> dirs;
  radii.reserve(indices.size());
  dirs.reserve(indices.size());
  for (std::size_t i : indices) {
    radii.push_back(radii_.at(i));
    dirs.push_back(directions_.at(i));
  }
  return PolarSample(std::move(radii), std::move(dirs), norm_p_);
}

double lp_norm(std::span<const double> x, double p) {
  if (p == 2.0) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
  }
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  // Scale by the largest entry so large p does not overflow.
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

PolarSample polar_decompose(std::span<const std::vector<double>> rows, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::kInvalidArgument, "norm exponent p must be in [1, inf)");
  }
  if (rows.empty()) throw Error(ErrorCode::kInsufficientData, "no rows");
  const std::size_t d = rows.front().size();
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "data needs d >= 2 columns");
  std::vector<double> radii;
  std::vector<UnitVector> dirs;
  radii.reserve(rows.size());
  dirs.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != d) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                      " columns, expected " + std::to_string(d));
    }
    const double r = lp_norm(row, p);
    if (!(r > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "row " + std::to_string(i) + " has zero norm");
    }
    if (!std::isfinite(r)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "row " + std::to_string(i) + " is not finite");
    }
    radii.push_back(r);
    dirs.emplace_back(row);
  }
  return PolarSample(std::move(radii), std::move(dirs), p);
}

void ThresholdSpec::validate() const {
  if (kind == Kind::kTopFraction && !(value > 0.0 && value < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "top fraction must lie in (0, 1)");
  }
  if (kind == Kind::kAbsolute && !(value > 0.0 && std::isfinite(value))) {
    throw Error(ErrorCode::kInvalidArgument, "absolute threshold must be positive");
  }
}

double resolve_threshold(const PolarSample& s, const ThresholdSpec& spec) {
  spec.validate();
  if (spec.kind == ThresholdSpec::Kind::kAbsolute) return spec.value;
  const double target = static_cast<double>(s.size()) * spec.value;
  // Guard against 1e5 * 0.005 landing one ulp above 500.
  const auto m = static_cast<std::size_t>(std::ceil(target * (1.0 - 1e-12)));
  if (m == 0) {
    throw Error(ErrorCode::kNoExceedances, "top fraction selects no observation");
  }
  if (m >= s.size()) {
    throw Error(ErrorCode::kAllExceed, "top fraction selects every observation");
  }
  return s.radius_at_rank(m + 1);
}

HazardCurve empirical_hazard(const PolarSample& s, std::span<const double> ks) {
  HazardCurve curve;
  const double n = static_cast<double>(s.size());
  for (double k : ks) {
    const std::size_t c = s.count_exceeding(k);
    if (c == 0) {
      curve.omitted.push_back(k);
      continue;
    }
    curve.knots.push_back({k, -std::log(static_cast<double>(c) / n)});
  }
  return curve;
}

HeavyTailDiagnostic heavy_tail_diagnostic(const PolarSample& s,
                                          double upper_fraction) {
  if (!(upper_fraction > 0.0 && upper_fraction <= 0.5)) {
    throw Error(ErrorCode::kInvalidArgument, "upper fraction must lie in (0, 0.5]");
  }
  constexpr std::size_t kMinTailPoints = 100;
  constexpr std::size_t kMinKnotCount = 20;
  constexpr std::size_t kMinKnots = 4;

  HeavyTailDiagnostic diag;
  diag.tail_points = static_cast<std::size_t>(
      std::floor(static_cast<double>(s.size()) * upper_fraction));
  if (diag.tail_points < kMinTailPoints) {
    throw Error(ErrorCode::kInsufficientData,
                "only " + std::to_string(diag.tail_points) +
                    " points in the upper tail, need 100");
  }
  const double n = static_cast<double>(s.size());
  for (std::size_t c = diag.tail_points; c >= kMinKnotCount; c /= 2) {
    if (c + 1 > s.size()) continue;
    const double k = s.radius_at_rank(c + 1);
    const std::size_t exceed = s.count_exceeding(k);
    if (exceed == 0) continue;
    if (!diag.knots.empty() && diag.knots.back().k >= k) continue;
    diag.knots.push_back({k, -std::log(static_cast<double>(exceed) / n)});
  }
  if (diag.knots.size() < kMinKnots) {
    throw Error(ErrorCode::kInsufficientData,
                "insufficient distinct tail points for the hazard diagnostic");
  }

  // Least squares for h/k against k.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& kn : diag.knots) {
    const double y = kn.h / kn.k;
    sx += kn.k;
    sy += y;
    sxx += kn.k * kn.k;
    sxy += kn.k * y;
  }
  const double m = static_cast<double>(diag.knots.size());
  const double denom = m * sxx - sx * sx;
  diag.ratio_slope = denom > 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
  diag.ratio_decreasing = diag.ratio_slope < 0.0;

  std::vector<double> slopes;
  for (std::size_t j = 0; j + 1 < diag.knots.size(); ++j) {
    const auto& a = diag.knots[j];
    const auto& b = diag.knots[j + 1];
    slopes.push_back((b.h - a.h) / (b.k - a.k));
  }
  std::size_t drops = 0;
  for (std::size_t j = 0; j + 1 < slopes.size(); ++j) {
    if (slopes[j + 1] < (1.0 - kSlopeDropMargin) * slopes[j]) ++drops;
  }
  diag.concave_fraction =
      static_cast<double>(drops) / static_cast<double>(slopes.size() - 1);
  diag.concave = diag.concave_fraction > 0.5;
  return diag;
}

GHat g_hat_counts(const PolarSample& s, double k, const CapSet& a) {
  if (a.dim() != s.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "set and sample dimensions differ");
  }
  GHat out;
  const auto idx = s.exceedances(k);
  out.exceedances = idx.size();
  if (out.exceedances == 0) {
    throw Error(ErrorCode::kNoExceedances,
                "no radius exceeds k = " + std::to_string(k));
  }
  if (out.exceedances == s.size()) {
    throw Error(ErrorCode::kAllExceed,
                "every radius exceeds k = " + std::to_string(k));
  }
  const auto& dirs = s.directions();
  for (std::size_t i : idx) {
    if (a.contains(dirs[i])) ++out.in_set;
  }
  const double n = static_cast<double>(s.size());
  if (out.in_set == 0) {
    out.value = std::numeric_limits<double>::infinity();
  } else {
    out.value = std::log(static_cast<double>(out.in_set) / n) /
                std::log(static_cast<double>(out.exceedances) / n);
  }
  return out;
}

double g_hat(const PolarSample& s, double k, const CapSet& a) {
  return g_hat_counts(s, k, a).value;
}

}  // namespace riskdir
