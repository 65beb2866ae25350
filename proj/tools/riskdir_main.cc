// riskdir: command-line front end.
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "riskdir/cli_io.h"
#include "riskdir/detector.h"
#include "riskdir/error.h"
#include "riskdir/synthdata.h"

namespace {

using namespace riskdir;

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitExceedances = 4;

struct Options {
  std::string input;
  std::string model;
  double norm_p = 2.0;
  double tolerance_c = 0.5;
  double threshold_quantile = 0.995;
  std::optional<double> threshold_abs;
  double ball_mass = 0.10;
  int grid = 360;
  std::uint64_t seed = 1;
  int levels = 3;
  bool log_diff = false;
  bool negative_quadrant = false;
  double perturb = 0.0;
  std::string report;
  std::string plot;
  std::size_t n = 100000;
  std::string output;
  double bisection_tol = kDefaultBisectionTol;
  double upper_fraction = 0.1;
};

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::kNoExceedances:
    case ErrorCode::kAllExceed:
      return kExitExceedances;
    case ErrorCode::kParse:
    case ErrorCode::kIo:
    case ErrorCode::kInsufficientData:
    case ErrorCode::kEmptySet:
      return kExitData;
    default:
      return kExitConfig;
  }
}

[[noreturn]] void config_error(const std::string& msg) {
  throw Error(ErrorCode::kInvalidArgument, msg);
}

DetectorConfig detector_config(const Options& o) {
  DetectorConfig cfg;
  cfg.tolerance_c = o.tolerance_c;
  if (o.threshold_abs) {
    cfg.threshold = ThresholdSpec::absolute(*o.threshold_abs);
  } else {
    if (!(o.threshold_quantile > 0.0 && o.threshold_quantile < 1.0)) {
      config_error("--threshold-quantile must lie in (0, 1)");
    }
    cfg.threshold = ThresholdSpec::top_fraction(1.0 - o.threshold_quantile);
  }
  cfg.ball_mass_q = o.ball_mass;
  cfg.grid_m = o.grid;
  cfg.seed = o.seed;
  cfg.validate();
  return cfg;
}

ConfigEcho echo(const Options& o, const std::string& command, std::size_t n) {
  ConfigEcho e;
  e.command = command;
  e.input = o.input;
  e.model = o.model;
  e.norm_p = round12(o.norm_p);
  e.tolerance_c = round12(o.tolerance_c);
  e.threshold_kind = o.threshold_abs ? "absolute" : "quantile";
  e.threshold_value = round12(o.threshold_abs ? *o.threshold_abs : o.threshold_quantile);
  e.ball_mass = round12(o.ball_mass);
  e.grid = o.grid;
  e.seed = o.seed;
  e.levels = command == "rank" ? o.levels : 1;
  e.log_diff = o.log_diff;
  e.negative_quadrant = o.negative_quadrant;
  e.perturb = round12(o.perturb);
  e.n = n;
  return e;
}

PolarSample load_sample(const Options& o) {
  if (o.input.empty() == o.model.empty()) {
    config_error("give exactly one of --input and --model");
  }
  PolarSample s = [&] {
    if (!o.input.empty()) {
      const IngestResult r = ingest_csv(o.input, {o.norm_p, o.log_diff, o.negative_quadrant});
      std::cerr << "read " << r.rows_read << " rows" << (r.header ? " (header skipped)" : "");
      if (o.negative_quadrant) std::cerr << ", " << r.quadrant_dropped << " outside the quadrant";
      std::cerr << ", " << r.zero_rows_dropped << " zero rows dropped\n";
      return r.sample;
    }
    if (o.log_diff || o.negative_quadrant) {
      config_error("--log-diff and --negative-quadrant apply to --input only");
    }
    return sample_model(load_model(o.model), o.n, o.seed);
  }();
  if (o.perturb > 0.0) s = perturb_directions(s, o.perturb, o.seed + 1);
  return s;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::kIo, "cannot write " + path);
}

void emit(const Options& o, const EstimateReport& r) {
  if (!o.report.empty()) write_file(o.report, serialize_report(r));
  if (!o.plot.empty()) {
    if (r.dim == 2) {
      write_file(o.plot, render_svg(r));
    } else {
      write_file(o.plot, render_plot_csv(r));
      std::cerr << "note: d > 2, plot data written as CSV to " << o.plot << "\n";
    }
  }
}

void print_level(std::size_t i, const LevelRecord& l, std::size_t dim) {
  std::size_t accepted = 0;
  for (const auto& v : l.verdicts) accepted += v.accepted ? 1 : 0;
  std::cout << "level " << i << ": n=" << l.sample_size << " k=" << l.threshold_k
            << " exceedances=" << l.n_exceedances << " accepted=" << accepted << "/"
            << l.verdicts.size() << "\n";
  if (l.empty) {
    std::cout << "  estimate: empty\n";
  } else if (dim == 2) {
    for (const auto& a : l.arcs) {
      std::cout << "  arc " << (a.lo_closed ? "[" : "(") << a.lo << ", " << a.hi
                << (a.hi_closed ? "]" : ")") << "\n";
    }
  } else {
    std::cout << "  estimate: " << l.positive.size() << " balls minus " << l.negative.size()
              << "\n";
  }
  for (const auto& w : l.warnings) std::cerr << "warning: level " << i << ": " << w << "\n";
}

int cmd_detect(const Options& o) {
  const DetectorConfig cfg = detector_config(o);
  const PolarSample s = load_sample(o);
  EstimateReport r;
  r.config = echo(o, "detect", s.size());
  r.dim = s.dim();
  r.diagnostics = make_diagnostic(s);
  const EstimateS e = scan(s, cfg);
  r.levels.push_back(make_level(e, s, 0.0));
  print_level(1, r.levels.back(), r.dim);
  emit(o, r);
  return 0;
}

int cmd_rank(const Options& o) {
  const DetectorConfig cfg = detector_config(o);
  const PolarSample s = load_sample(o);
  const RiskRanking ranking = risk_ranking(s, cfg, o.levels);
  EstimateReport r;
  r.config = echo(o, "rank", s.size());
  r.dim = s.dim();
  r.diagnostics = make_diagnostic(s);
  // Rebuild each level's sample to record its tail points.
  PolarSample current = s;
  for (std::size_t i = 0; i < ranking.levels.size(); ++i) {
    const EstimateS& e = ranking.levels[i];
    r.levels.push_back(make_level(e, current, ranking.removed_fractions[i]));
    print_level(i + 1, r.levels.back(), r.dim);
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < current.size(); ++j) {
      if (!e.estimate.contains(current.directions()[j])) keep.push_back(j);
    }
    if (keep.empty()) break;
    current = current.subset(keep);
  }
  r.stop_reason = ranking.stop_reason;
  std::cout << "stopped: " << r.stop_reason << "\n";
  emit(o, r);
  return 0;
}

int cmd_simulate(const Options& o) {
  if (o.model.empty()) config_error("simulate needs --model");
  if (!o.input.empty()) config_error("simulate takes --model, not --input");
  PolarSample s = sample_model(load_model(o.model), o.n, o.seed);
  if (o.perturb > 0.0) s = perturb_directions(s, o.perturb, o.seed + 1);
  if (o.output.empty()) {
    write_csv(std::cout, to_rows(s));
  } else {
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + o.output);
    write_csv(out, to_rows(s));
    std::cerr << "wrote " << s.size() << " rows to " << o.output << "\n";
  }
  return 0;
}

int cmd_diagnose(const Options& o) {
  const PolarSample s = load_sample(o);
  EstimateReport r;
  r.config = echo(o, "diagnose", s.size());
  r.dim = s.dim();
  r.diagnostics = make_diagnostic(s, o.upper_fraction);
  const DiagnosticRecord& d = r.diagnostics;
  if (!d.available) {
    std::cerr << "diagnostic unavailable: " << d.error << "\n";
  } else {
    std::cout << "tail points: " << d.tail_points << "\n"
              << "h(k)/k slope: " << d.ratio_slope
              << (d.ratio_decreasing ? " (decreasing)" : " (not decreasing)") << "\n"
              << "concave fraction: " << d.concave_fraction
              << (d.concave ? " (concave)" : " (not concave)") << "\n";
    for (const auto& [k, h] : d.knots) std::cout << "  k=" << k << " h=" << h << "\n";
  }
  emit(o, r);
  return 0;
}

int cmd_oracle_check(const Options& o) {
  if (o.model.empty()) config_error("oracle-check needs --model");
  const ModelSpec spec = load_model(o.model);
  if (!spec.cones) config_error("oracle-check needs a cone mixture model");
  const ConeMixtureModel& model = *spec.cones;
  if (o.grid < 4) config_error("--grid must be >= 4");
  const AnalyticG oracle(model);
  const auto grid = direction_grid(static_cast<int>(model.dim), o.grid, o.seed);
  const CapSet est = algorithm_estimate(oracle, grid, o.bisection_tol);
  const CapSet truth = true_S(model);
  double h = 0.0;
  if (est.is_empty() != truth.is_empty()) {
    h = std::numeric_limits<double>::infinity();
  } else if (!est.is_empty()) {
    h = hausdorff_dist(est, truth);
  }
  OracleRecord rec{round12(h), round12(kTwoPi / o.grid + 2.0 * o.bisection_tol), {}, {}};
  if (model.dim == 2) {
    rec.estimate_arcs = make_arcs(est.arcs());
    rec.true_arcs = make_arcs(truth.arcs());
  }
  std::cout << "hausdorff to true S: " << rec.hausdorff << "\n"
            << "grid spacing + 2 tol: " << rec.bound << "\n";
  for (const auto& a : rec.estimate_arcs) {
    std::cout << "  estimate arc [" << a.lo << ", " << a.hi << "]\n";
  }
  EstimateReport r;
  r.config = echo(o, "oracle-check", 0);
  r.dim = model.dim;
  r.oracle = rec;
  if (!o.report.empty()) write_file(o.report, serialize_report(r));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Find the riskiest directions of heavy-tailed multivariate data."};
  app.set_config("--config", "", "Flat key = value file; command-line flags override it");
  app.require_subcommand(1);
  Options o;
  app.add_option("--input", o.input, "CSV file, one observation per row");
  app.add_option("--model", o.model, "Model preset or JSON model file");
  app.add_option("--norm-p", o.norm_p, "l_p norm for the radius")->capture_default_str();
  app.add_option("--tolerance-c", o.tolerance_c, "Accept when g <= 1 + c")->capture_default_str();
  auto* q = app.add_option("--threshold-quantile", o.threshold_quantile,
                           "Radius quantile used as threshold k")
                ->capture_default_str();
  app.add_option("--threshold-abs", o.threshold_abs, "Absolute threshold k")->excludes(q);
  app.add_option("--ball-mass", o.ball_mass, "Share of directions in each test ball")
      ->capture_default_str();
  app.add_option("--grid", o.grid, "Number of grid directions")->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for sampling, perturbation and grids")
      ->capture_default_str();
  app.add_option("--levels", o.levels, "Ranking levels (rank)")->capture_default_str();
  app.add_flag("--log-diff", o.log_diff, "Use log-differences of consecutive rows");
  app.add_flag("--negative-quadrant", o.negative_quadrant,
               "Keep rows with all components negative and negate them");
  app.add_option("--perturb", o.perturb, "Perturb directions within this radius (0 = off)")
      ->capture_default_str();
  app.add_option("--report", o.report, "JSON report path");
  app.add_option("--plot", o.plot, "SVG plot path (CSV when d > 2)");
  app.add_option("--n", o.n, "Sample size for --model")->capture_default_str();
  app.add_option("--output", o.output, "CSV output of simulate (default stdout)");
  app.add_option("--bisection-tol", o.bisection_tol, "Bisection tolerance (oracle-check)")
      ->capture_default_str();
  app.add_option("--upper-fraction", o.upper_fraction, "Tail share examined (diagnose)")
      ->capture_default_str();

  auto* detect = app.add_subcommand("detect", "Estimate the set of riskiest directions");
  auto* rank = app.add_subcommand("rank", "Rank direction sets by repeated estimation");
  auto* simulate = app.add_subcommand("simulate", "Sample a model and write CSV");
  auto* diagnose = app.add_subcommand("diagnose", "Heavy-tail diagnostic of the radii");
  auto* oracle = app.add_subcommand("oracle-check",
                                    "Run the ball-shrinking algorithm on the model's limit G");
  for (auto* sub : {detect, rank, simulate, diagnose, oracle}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (detect->parsed()) return cmd_detect(o);
    if (rank->parsed()) return cmd_rank(o);
    if (simulate->parsed()) return cmd_simulate(o);
    if (diagnose->parsed()) return cmd_diagnose(o);
    if (oracle->parsed()) return cmd_oracle_check(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}
