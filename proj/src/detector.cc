#include "riskdir/detector.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

#include "riskdir/error.h"

namespace riskdir {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t mass_count(std::size_t n, double q) {
  return static_cast<std::size_t>(std::ceil(static_cast<double>(n) * q * (1.0 - 1e-12)));
}

// Runs fn(i) for i in [0, count) over a few threads; results are written by
// index so the outcome does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, Fn fn) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(std::min<std::size_t>(hw, 8), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

void DetectorConfig::validate() const {
  if (!(tolerance_c > 0.0 && std::isfinite(tolerance_c))) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance c must be positive");
  }
  threshold.validate();
  if (!(ball_mass_q > 0.0 && ball_mass_q < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "ball mass must lie in (0, 1)");
  }
  if (grid_m < 4) throw Error(ErrorCode::kInvalidArgument, "grid needs m >= 4");
}

double smallest_mass_ball(const PolarSample& s, const UnitVector& v, double q) {
  if (v.dim() != s.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "direction and sample dimensions differ");
  }
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "ball mass must lie in (0, 1)");
  }
  const std::size_t m = mass_count(s.size(), q);
  if (m < 1 || static_cast<double>(s.size()) * q < 1.0) {
    throw Error(ErrorCode::kInsufficientData, "n * q < 1: ball mass too small");
  }
  std::vector<double> dist;
  dist.reserve(s.size());
  for (const auto& u : s.directions()) dist.push_back(geodesic_dist(v, u));
  std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(m - 1),
                   dist.end());
  return std::min(kPi, std::nextafter(dist[m - 1], kInf));
}

EstimateS scan(const PolarSample& s, const DetectorConfig& cfg) {
  cfg.validate();
  const double k = resolve_threshold(s, cfg.threshold);
  const std::size_t n_exc = s.count_exceeding(k);
  if (n_exc == 0) throw Error(ErrorCode::kNoExceedances, "no radius exceeds the threshold");
  if (n_exc == s.size()) throw Error(ErrorCode::kAllExceed, "every radius exceeds the threshold");
  if (n_exc < kMinScanExceedances) {
    throw Error(ErrorCode::kNoExceedances,
                "only " + std::to_string(n_exc) + " exceedances; the scan needs at least " +
                    std::to_string(kMinScanExceedances));
  }
  const auto grid = direction_grid(static_cast<int>(s.dim()), cfg.grid_m, cfg.seed);

  std::vector<DirectionVerdict> verdicts(grid.size(), DirectionVerdict{grid[0]});
  parallel_for(grid.size(), [&](std::size_t i) {
    DirectionVerdict d{grid[i]};
    d.s_v = smallest_mass_ball(s, grid[i], cfg.ball_mass_q);
    const GHat g = g_hat_counts(s, k, CapSet::from_ball(GeodesicBall::open(grid[i], d.s_v)));
    d.g_value = g.value;
    d.in_ball = g.in_set;
    d.accepted = g.value <= 1.0 + cfg.tolerance_c;
    d.reliable = g.in_set >= cfg.min_reliable_count;
    verdicts[i] = std::move(d);
  });

  std::vector<GeodesicBall> accepted;
  std::vector<GeodesicBall> rejected;
  bool any_reliable = false;
  for (const auto& d : verdicts) {
    any_reliable = any_reliable || d.reliable;
    if (d.accepted) {
      accepted.push_back(GeodesicBall::open(d.v, d.s_v));
    } else if (d.reliable) {
      rejected.push_back(GeodesicBall::open(d.v, d.s_v));
    }
  }

  EstimateS out{CapSet::from_balls(std::move(accepted), std::move(rejected), s.dim())};
  out.verdicts = std::move(verdicts);
  out.config = cfg;
  out.threshold_k = k;
  out.n_exceedances = n_exc;
  if (!any_reliable) out.warnings.push_back("all verdicts are low-count");
  if (out.estimate.is_empty()) {
    out.warnings.push_back("estimate is empty");
  } else if (s.dim() == 2) {
    const double spacing = kTwoPi / cfg.grid_m;
    const double measure = out.estimate.arcs().measure();
    if (measure < 2.0 * spacing) {
      out.warnings.push_back("estimate is nearly empty (arc measure " +
                             std::to_string(measure) + " rad)");
    }
  }
  return out;
}

AvResult algorithm_Av(const GOracle& oracle, const UnitVector& v, double tol) {
  if (!(tol > 0.0 && tol < kPi / 4.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bisection tolerance must lie in (0, pi/4)");
  }
  const std::size_t d = v.dim();
  if (oracle(CapSet::full(d)) != 1.0) {
    throw Error(ErrorCode::kNonMonotoneOracle, "oracle does not give G(sphere) = 1");
  }
  // f(r) = G(B(v, r)^c) is nondecreasing in r.
  auto exceeds = [&](double r) {
    const double g = oracle(CapSet::from_ball(ball_complement(GeodesicBall::open(v, r))));
    if (!(g >= 1.0)) {
      throw Error(ErrorCode::kNonMonotoneOracle, "oracle returned G < 1");
    }
    return g > 1.0;
  };
  const bool at_lo = exceeds(tol);
  const bool at_hi = exceeds(kPi - tol);
  if (at_lo && !at_hi) {
    throw Error(ErrorCode::kNonMonotoneOracle,
                "G(B(v, r)^c) decreases in r: oracle is not monotone");
  }
  if (!at_hi) return {AvResult::Kind::kFull, kPi, CapSet::full(d)};
  if (at_lo) return {AvResult::Kind::kEmpty, 0.0, CapSet::empty(d)};
  double lo = tol;
  double hi = kPi - tol;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (exceeds(mid) ? hi : lo) = mid;
  }
  return {AvResult::Kind::kBall, hi, CapSet::from_ball(GeodesicBall::open(v, hi))};
}

CapSet algorithm_estimate(const GOracle& oracle, std::span<const UnitVector> grid,
                          double tol) {
  if (grid.empty()) throw Error(ErrorCode::kInvalidArgument, "direction grid is empty");
  const std::size_t d = grid.front().dim();
  std::vector<std::optional<AvResult>> results(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { results[i] = algorithm_Av(oracle, grid[i], tol); });
  std::vector<GeodesicBall> balls;
  for (const auto& opt : results) {
    const AvResult& r = *opt;
    if (r.kind == AvResult::Kind::kEmpty) return CapSet::empty(d);
    if (r.kind == AvResult::Kind::kBall) balls.push_back(r.set.positive().front());
  }
  return CapSet::intersect_balls(balls, d);
}

RiskRanking risk_ranking(const PolarSample& s, const DetectorConfig& cfg, int max_levels) {
  if (max_levels < 1) throw Error(ErrorCode::kInvalidArgument, "max_levels must be >= 1");
  RiskRanking out;
  PolarSample current = s;
  std::vector<GeodesicBall> prior;  // positive balls of earlier levels (d > 2)
  ArcSet prior_arcs;                // union of earlier estimates (d = 2)
  for (int level = 0; level < max_levels; ++level) {
    if (level > 0 && current.size() < kMinRankingSample) {
      out.stop_reason = "remaining sample below " + std::to_string(kMinRankingSample);
      return out;
    }
    std::optional<EstimateS> scanned;
    try {
      scanned = scan(current, cfg);
    } catch (const Error& e) {
      if (level == 0) throw;
      out.stop_reason = e.what();
      return out;
    }
    EstimateS& est = *scanned;
    if (level > 0) {
      if (s.dim() == 2) {
        est.estimate = CapSet::from_arcs(est.estimate.arcs().subtract(prior_arcs));
      } else {
        auto neg = est.estimate.negative();
        neg.insert(neg.end(), prior.begin(), prior.end());
        est.estimate = CapSet::from_balls(est.estimate.positive(), std::move(neg), s.dim());
      }
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (!est.estimate.contains(current.directions()[i])) keep.push_back(i);
    }
    const bool empty = est.estimate.is_empty();
    out.sample_sizes.push_back(current.size());
    out.removed_fractions.push_back(
        1.0 - static_cast<double>(keep.size()) / static_cast<double>(current.size()));
    if (s.dim() == 2) {
      prior_arcs = prior_arcs.unite(est.estimate.arcs());
    } else {
      prior.insert(prior.end(), est.estimate.positive().begin(), est.estimate.positive().end());
    }
    out.levels.push_back(std::move(est));
    if (empty) {
      out.stop_reason = "estimate is empty";
      return out;
    }
    if (keep.empty()) {
      out.stop_reason = "no observations left";
      return out;
    }
    current = current.subset(keep);
  }
  out.stop_reason = "reached max levels";
  return out;
}

}  // namespace riskdir
