#include "riskdir/synthdata.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>

#include "riskdir/error.h"

namespace riskdir {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOverlapEps = 1e-12;

// Uniform on the open interval (0, 1); never returns 0 or 1.
double open_unit(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Relative area of a cap of radius r on S^{d-1}, up to a d-dependent factor.
double cap_weight(double r, std::size_t d) {
  if (d == 2) return r;
  if (d == 3) return 1.0 - std::cos(r);
  constexpr int kSteps = 2048;  // Simpson, even
  const double h = r / kSteps;
  const double e = static_cast<double>(d) - 2.0;
  double s = 0.0;
  for (int i = 0; i <= kSteps; ++i) {
    const double w = (i == 0 || i == kSteps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::pow(std::sin(i * h), e);
  }
  return s * h / 3.0;
}

bool is_atom(const GeodesicBall& b) { return b.closed() && b.radius() == 0.0; }

// Draws directions uniformly from a CapSet region, or uniformly among its
// atoms when the region has no area.
class RegionSampler {
 public:
  explicit RegionSampler(const CapSet& region) : region_(region) {
    for (const auto& b : region.positive()) {
      if (is_atom(b) && region.contains(b.center())) atoms_.push_back(b.center());
    }
    if (region.dim() == 2) {
      for (const auto& c : region.arcs().components()) {
        if (c.length() > 0.0) arcs_.push_back(c);
      }
      double acc = 0.0;
      for (const auto& c : arcs_) {
        acc += c.length();
        cumulative_.push_back(acc);
      }
    } else {
      double acc = 0.0;
      for (const auto& b : region.positive()) {
        if (b.radius() == 0.0) continue;
        balls_.push_back(b);
        if (b.is_full()) has_full_ = true;
        acc += cap_weight(b.radius(), region.dim());
        cumulative_.push_back(acc);
      }
    }
    if (cumulative_.empty() && atoms_.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "cannot sample from an empty region");
    }
  }

  UnitVector draw(std::mt19937_64& rng) const {
    if (cumulative_.empty()) {
      const auto i = static_cast<std::size_t>(open_unit(rng) * atoms_.size());
      return atoms_[std::min(i, atoms_.size() - 1)];
    }
    if (region_.dim() == 2) {
      const double t = open_unit(rng) * cumulative_.back();
      const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), t);
      const auto i = static_cast<std::size_t>(it - cumulative_.begin());
      const double before = i == 0 ? 0.0 : cumulative_[i - 1];
      return UnitVector::from_angle(arcs_[std::min(i, arcs_.size() - 1)].lo + (t - before));
    }
    for (int attempt = 0; attempt < 1000000; ++attempt) {
      UnitVector x = has_full_ ? sample_uniform_sphere(region_.dim(), rng)
                               : propose(rng);
      if (!has_full_) {
        std::size_t covering = 0;
        for (const auto& b : balls_) covering += b.contains(x) ? 1 : 0;
        if (covering > 1 && open_unit(rng) * covering > 1.0) continue;
      }
      if (region_.contains(x)) return x;
    }
    throw Error(ErrorCode::kInvalidArgument, "region sampler failed to accept a draw");
  }

 private:
  UnitVector propose(std::mt19937_64& rng) const {
    const double t = open_unit(rng) * cumulative_.back();
    const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), t);
    const auto i = std::min(static_cast<std::size_t>(it - cumulative_.begin()),
                            balls_.size() - 1);
    return sample_in_cap(balls_[i].center(), balls_[i].radius(), rng);
  }

  CapSet region_;
  std::vector<UnitVector> atoms_;
  std::vector<ArcSet::Arc> arcs_;
  std::vector<GeodesicBall> balls_;
  std::vector<double> cumulative_;
  bool has_full_ = false;
};

}  // namespace

RadialLaw RadialLaw::pareto(double alpha, double x_m) {
  RadialLaw l{Family::kPareto, alpha, x_m};
  l.validate();
  return l;
}

RadialLaw RadialLaw::weibull(double beta, double lambda) {
  RadialLaw l{Family::kWeibull, beta, lambda};
  l.validate();
  return l;
}

RadialLaw RadialLaw::lognormal(double mu, double sigma) {
  RadialLaw l{Family::kLogNormal, mu, sigma};
  l.validate();
  return l;
}

void RadialLaw::validate() const {
  switch (family) {
    case Family::kPareto:
      if (!(p1 > 0.0 && p2 > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "Pareto needs alpha > 0, x_m > 0");
      }
      break;
    case Family::kWeibull:
      if (!(p1 > 0.0 && p1 <= 1.0 && p2 > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "Weibull needs beta in (0, 1], lambda > 0");
      }
      break;
    case Family::kLogNormal:
      if (!(std::isfinite(p1) && p2 > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "LogNormal needs sigma > 0");
      }
      break;
  }
}

double RadialLaw::survival(double k) const {
  switch (family) {
    case Family::kPareto:
      return k <= p2 ? 1.0 : std::pow(k / p2, -p1);
    case Family::kWeibull:
      return k <= 0.0 ? 1.0 : std::exp(-p2 * std::pow(k, p1));
    case Family::kLogNormal:
      return k <= 0.0 ? 1.0
                      : 0.5 * std::erfc((std::log(k) - p1) / (p2 * std::sqrt(2.0)));
  }
  return 1.0;
}

double RadialLaw::hazard(double k) const {
  switch (family) {
    case Family::kPareto:
      return k <= p2 ? 0.0 : p1 * std::log(k / p2);
    case Family::kWeibull:
      return k <= 0.0 ? 0.0 : p2 * std::pow(k, p1);
    case Family::kLogNormal:
      return -std::log(survival(k));
  }
  return 0.0;
}

double RadialLaw::from_survival(double u) const {
  switch (family) {
    case Family::kPareto:
      return p2 * std::pow(u, -1.0 / p1);
    case Family::kWeibull:
      return std::pow(-std::log(u) / p2, 1.0 / p1);
    case Family::kLogNormal: {
      const boost::math::normal_distribution<double> normal(p1, p2);
      return std::exp(boost::math::quantile(boost::math::complement(normal, u)));
    }
  }
  return 0.0;
}

std::string RadialLaw::describe() const {
  std::ostringstream os;
  switch (family) {
    case Family::kPareto: os << "Pareto(alpha=" << p1 << ", x_m=" << p2 << ")"; break;
    case Family::kWeibull: os << "Weibull(beta=" << p1 << ", lambda=" << p2 << ")"; break;
    case Family::kLogNormal: os << "LogNormal(mu=" << p1 << ", sigma=" << p2 << ")"; break;
  }
  return os.str();
}

double tail_ratio(const RadialLaw& a, const RadialLaw& b) {
  using F = RadialLaw::Family;
  // Growth order of the hazard: Pareto (log k) < LogNormal (log^2 k) <
  // Weibull (k^beta).
  auto rank = [](F f) {
    switch (f) {
      case F::kPareto: return 0;
      case F::kLogNormal: return 1;
      case F::kWeibull: return 2;
    }
    return 0;
  };
  if (a.family != b.family) return rank(a.family) > rank(b.family) ? kInf : 0.0;
  switch (a.family) {
    case F::kPareto:
      return a.p1 / b.p1;
    case F::kWeibull:
      if (a.p1 == b.p1) return a.p2 / b.p2;
      return a.p1 > b.p1 ? kInf : 0.0;
    case F::kLogNormal:
      if (a.p2 == b.p2) return 1.0;
      throw Error(ErrorCode::kUnsupported,
                  "LogNormal tails with different sigma are not compared: " +
                      a.describe() + " vs " + b.describe());
  }
  return kInf;
}

void ConeMixtureModel::validate() const {
  if (dim < 2) throw Error(ErrorCode::kInvalidArgument, "model needs d >= 2");
  if (cones.empty()) throw Error(ErrorCode::kInvalidArgument, "model has no cones");
  double total = 0.0;
  for (const auto& c : cones) {
    if (c.region.dim() != dim) {
      throw Error(ErrorCode::kDimensionMismatch, "cone region dimension");
    }
    if (!(c.weight > 0.0)) throw Error(ErrorCode::kInvalidArgument, "cone weight <= 0");
    c.law.validate();
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "cone weights must sum to 1");
  }
  if (dim == 2) {
    double measure = 0.0;
    ArcSet covered;
    for (const auto& c : cones) {
      if (c.region.arcs().intersect(covered).measure() > 1e-9) {
        throw Error(ErrorCode::kInvalidArgument, "cone regions overlap");
      }
      covered = covered.unite(c.region.arcs());
      measure += c.region.arcs().measure();
    }
    if (std::abs(measure - kTwoPi) > 1e-9) {
      throw Error(ErrorCode::kInvalidArgument, "cone regions do not cover the circle");
    }
  }
}

std::size_t ConeMixtureModel::dominant_cone() const {
  std::size_t best = 0;
  for (std::size_t j = 1; j < cones.size(); ++j) {
    if (tail_ratio(cones[j].law, cones[best].law) < 1.0) best = j;
  }
  return best;
}

ConeMixtureModel sector_model(const std::vector<RadialLaw>& laws) {
  if (laws.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "sector model needs at least 2 sectors");
  }
  ConeMixtureModel model;
  model.dim = 2;
  const double m = static_cast<double>(laws.size());
  for (std::size_t j = 0; j < laws.size(); ++j) {
    const double lo = kTwoPi * static_cast<double>(j) / m;
    const double hi = kTwoPi * static_cast<double>(j + 1) / m;
    model.cones.push_back(
        {CapSet::from_arcs(ArcSet::interval(lo, hi, true, false)), 1.0 / m, laws[j]});
  }
  model.validate();
  return model;
}

ConeMixtureModel eight_cone_model(const RadialLaw& heavy, const RadialLaw& light) {
  std::vector<RadialLaw> laws(8, light);
  laws[0] = heavy;
  laws[4] = heavy;
  return sector_model(laws);
}

ConeMixtureModel default_eight_cone_model(double light_weibull_rate) {
  return eight_cone_model(RadialLaw::pareto(2.0, 1.0),
                          RadialLaw::weibull(0.5, light_weibull_rate));
}

ConeMixtureModel pareto_gap_model(double alpha_light) {
  return eight_cone_model(RadialLaw::pareto(2.0, 1.0),
                          RadialLaw::pareto(alpha_light, 1.0));
}

ConeMixtureModel three_tier_model(const RadialLaw& light) {
  std::vector<RadialLaw> laws(8, light);
  laws[0] = RadialLaw::pareto(2.0, 1.0);
  laws[4] = RadialLaw::pareto(2.5, 1.0);
  return sector_model(laws);
}

ConeMixtureModel singleton_model(const UnitVector& atom, double atom_weight,
                                 const RadialLaw& atom_law,
                                 const RadialLaw& rest_law) {
  if (!(atom_weight > 0.0 && atom_weight < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "atom weight must lie in (0, 1)");
  }
  const std::size_t d = atom.dim();
  const CapSet point = CapSet::from_ball(GeodesicBall::closed_ball(atom, 0.0));
  ConeMixtureModel model;
  model.dim = d;
  model.cones.push_back({point, atom_weight, atom_law});
  model.cones.push_back({CapSet::full(d).subtract(point), 1.0 - atom_weight, rest_law});
  model.validate();
  return model;
}

ConeMixtureModel default_singleton_model() {
  return singleton_model(UnitVector::from_angle(kPi / 3.0), 0.05,
                         RadialLaw::pareto(2.0, 1.0),
                         RadialLaw::weibull(0.5, kSingletonRestRate));
}

UnitVector sample_uniform_sphere(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  for (;;) {
    std::vector<double> g(dim);
    double s = 0.0;
    for (double& v : g) {
      v = normal(rng);
      s += v * v;
    }
    if (s > 1e-20) return UnitVector(std::move(g));
  }
}

UnitVector sample_in_cap(const UnitVector& center, double radius,
                         std::mt19937_64& rng) {
  const std::size_t d = center.dim();
  if (radius <= 0.0) return center;
  if (radius >= kPi) return sample_uniform_sphere(d, rng);
  if (d == 2) {
    const double offset = (2.0 * open_unit(rng) - 1.0) * radius;
    return UnitVector::from_angle(center.angle() + offset);
  }
  // Polar angle with density proportional to sin^{d-2}.
  double theta = 0.0;
  if (d == 3) {
    const double lo = std::cos(radius);
    theta = std::acos(lo + (1.0 - lo) * open_unit(rng));
  } else {
    const double e = static_cast<double>(d) - 2.0;
    for (;;) {
      theta = radius * std::pow(open_unit(rng), 1.0 / (e + 1.0));
      if (open_unit(rng) < std::pow(std::sin(theta) / theta, e)) break;
    }
  }
  std::normal_distribution<double> normal;
  std::vector<double> t(d);
  for (;;) {
    double proj = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      t[i] = normal(rng);
      proj += t[i] * center[i];
    }
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      t[i] -= proj * center[i];
      s += t[i] * t[i];
    }
    if (s > 1e-20) {
      const double inv = 1.0 / std::sqrt(s);
      for (double& v : t) v *= inv;
      break;
    }
  }
  std::vector<double> x(d);
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  for (std::size_t i = 0; i < d; ++i) x[i] = c * center[i] + sn * t[i];
  return UnitVector(std::move(x));
}

PolarSample sample_cone_mixture(const ConeMixtureModel& model, std::size_t n,
                                std::uint64_t seed) {
  model.validate();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "sample size must be >= 1");
  std::vector<RegionSampler> samplers;
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& c : model.cones) {
    samplers.emplace_back(c.region);
    acc += c.weight;
    cumulative.push_back(acc);
  }
  std::mt19937_64 rng(seed);
  std::vector<double> radii;
  std::vector<UnitVector> dirs;
  radii.reserve(n);
  dirs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = open_unit(rng) * acc;
    auto j = static_cast<std::size_t>(
        std::lower_bound(cumulative.begin(), cumulative.end(), t) - cumulative.begin());
    j = std::min(j, model.cones.size() - 1);
    dirs.push_back(samplers[j].draw(rng));
    radii.push_back(model.cones[j].law.from_survival(open_unit(rng)));
  }
  return PolarSample(std::move(radii), std::move(dirs), 2.0);
}

std::vector<std::vector<double>> to_rows(const PolarSample& s) {
  std::vector<std::vector<double>> rows;
  rows.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto u = s.directions()[i].coords();
    const double scale = s.radii()[i] / lp_norm(u, s.norm_p());
    std::vector<double> row(u.begin(), u.end());
    for (double& v : row) v *= scale;
    rows.push_back(std::move(row));
  }
  return rows;
}

PolarSample perturb_directions(const PolarSample& s, double radius,
                               std::uint64_t seed) {
  if (!(radius > 0.0 && radius <= kPi / 8.0)) {
    throw Error(ErrorCode::kInvalidArgument, "perturbation radius must lie in (0, pi/8]");
  }
  std::mt19937_64 rng(seed);
  std::vector<UnitVector> dirs;
  dirs.reserve(s.size());
  for (const auto& u : s.directions()) dirs.push_back(sample_in_cap(u, radius, rng));
  return PolarSample(std::vector<double>(s.radii().begin(), s.radii().end()),
                     std::move(dirs), s.norm_p());
}

AnalyticG::AnalyticG(ConeMixtureModel model, int mc_samples, std::uint64_t seed)
    : model_(std::move(model)) {
  model_.validate();
  const std::size_t dom = model_.dominant_cone();
  for (const auto& c : model_.cones) {
    ratios_.push_back(tail_ratio(c.law, model_.cones[dom].law));
  }
  if (model_.dim > 2) {
    if (mc_samples < 1) {
      throw Error(ErrorCode::kInvalidArgument, "Monte Carlo sample size must be >= 1");
    }
    for (std::size_t j = 0; j < model_.cones.size(); ++j) {
      std::mt19937_64 rng(seed + j);
      const RegionSampler sampler(model_.cones[j].region);
      std::vector<UnitVector> pts;
      pts.reserve(static_cast<std::size_t>(mc_samples));
      for (int i = 0; i < mc_samples; ++i) pts.push_back(sampler.draw(rng));
      samples_.push_back(std::move(pts));
    }
  }
}

bool AnalyticG::overlaps(std::size_t j, const CapSet& a) const {
  const CapSet& region = model_.cones[j].region;
  if (model_.dim == 2) {
    const ArcSet& arcs = region.arcs();
    if (arcs.measure() > 0.0) {
      return arcs.intersect(a.arcs()).measure() > kOverlapEps;
    }
    for (const auto& b : region.positive()) {
      if (is_atom(b) && a.contains(b.center())) return true;
    }
    return false;
  }
  if (region.negative().empty() && a.negative().empty()) {
    // Two caps share an open patch iff their centers are closer than the
    // sum of the radii.
    for (const auto& b : region.positive()) {
      if (is_atom(b)) {
        if (a.contains(b.center())) return true;
        continue;
      }
      for (const auto& e : a.positive()) {
        if (e.radius() > 0.0 && geodesic_dist(b.center(), e.center()) < b.radius() + e.radius()) {
          return true;
        }
      }
    }
    return false;
  }
  for (const auto& x : samples_[j]) {
    if (a.contains(x)) return true;
  }
  return false;
}

double AnalyticG::operator()(const CapSet& a) const {
  if (a.dim() != model_.dim) {
    throw Error(ErrorCode::kDimensionMismatch, "set and model dimensions differ");
  }
  double g = kInf;
  for (std::size_t j = 0; j < model_.cones.size(); ++j) {
    if (ratios_[j] < g && overlaps(j, a)) g = ratios_[j];
  }
  return g;
}

double analytic_G(const ConeMixtureModel& model, const CapSet& a) {
  return AnalyticG(model)(a);
}

CapSet true_S(const ConeMixtureModel& model) {
  model.validate();
  const std::size_t dom = model.dominant_cone();
  std::vector<std::size_t> heavy;
  for (std::size_t j = 0; j < model.cones.size(); ++j) {
    if (tail_ratio(model.cones[j].law, model.cones[dom].law) == 1.0) heavy.push_back(j);
  }
  if (model.dim == 2) {
    ArcSet acc;
    for (std::size_t j : heavy) acc = acc.unite(model.cones[j].region.arcs());
    return CapSet::from_arcs(acc.closure());
  }
  CapSet acc = CapSet::empty(model.dim);
  for (std::size_t j : heavy) acc = acc.unite(model.cones[j].region);
  return acc.closure();
}

namespace {

struct EllipseFrame {
  Eigen::MatrixXd a;
  Eigen::MatrixXd a_inv;
  double sigma_max = 1.0;
};

EllipseFrame make_frame(const EllipticalModel& model) {
  const std::size_t d = model.dim();
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "elliptical model needs d >= 2");
  EllipseFrame f;
  f.a.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    if (model.axis_matrix[i].size() != d) {
      throw Error(ErrorCode::kDimensionMismatch, "axis matrix must be square");
    }
    for (std::size_t j = 0; j < d; ++j) {
      f.a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          model.axis_matrix[i][j];
    }
  }
  if (!f.a.isApprox(f.a.transpose()) || f.a.llt().info() != Eigen::Success) {
    throw Error(ErrorCode::kInvalidArgument, "axis matrix must be symmetric positive definite");
  }
  f.a_inv = f.a.inverse();
  f.sigma_max = Eigen::JacobiSVD<Eigen::MatrixXd>(f.a).singularValues()(0);
  if (!(model.c_multiplier > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "c multiplier must be positive");
  }
  return f;
}

double frame_c(const EllipseFrame& f, const EllipticalModel& model, const UnitVector& u) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(u.dim()));
  for (std::size_t i = 0; i < u.dim(); ++i) v(static_cast<Eigen::Index>(i)) = u[i];
  return model.c_multiplier * f.sigma_max * (f.a_inv * v).norm();
}

}  // namespace

double elliptical_c(const EllipticalModel& model, const UnitVector& u) {
  if (u.dim() != model.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "direction and model dimensions differ");
  }
  return frame_c(make_frame(model), model, u);
}

PolarSample sample_elliptical(const EllipticalModel& model, std::size_t n,
                              std::uint64_t seed) {
  const EllipseFrame f = make_frame(model);
  model.base.validate();
  if (model.base.family == RadialLaw::Family::kLogNormal) {
    throw Error(ErrorCode::kUnsupported,
                "elliptical sampling needs a closed-form inverse hazard");
  }
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "sample size must be >= 1");
  const std::size_t d = model.dim();
  std::mt19937_64 rng(seed);
  std::vector<double> radii;
  std::vector<UnitVector> dirs;
  radii.reserve(n);
  dirs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const UnitVector s = sample_uniform_sphere(d, rng);
    Eigen::VectorXd sv(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) sv(static_cast<Eigen::Index>(j)) = s[j];
    const Eigen::VectorXd y = f.a * sv;
    UnitVector u(std::vector<double>(y.data(), y.data() + y.size()));
    const double c = frame_c(f, model, u);
    // P(R > k | U = u) = exp(-c h(k))  =>  h(R) = E / c with E ~ Exp(1).
    const double h = -std::log(open_unit(rng)) / c;
    double r = 0.0;
    if (model.base.family == RadialLaw::Family::kPareto) {
      r = model.base.p2 * std::exp(h / model.base.p1);
    } else {
      r = std::pow(h / model.base.p2, 1.0 / model.base.p1);
    }
    radii.push_back(r);
    dirs.push_back(std::move(u));
  }
  return PolarSample(std::move(radii), std::move(dirs), 2.0);
}

}  // namespace riskdir
