#ifndef RISKDIR_CLI_IO_H_
#define RISKDIR_CLI_IO_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "riskdir/detector.h"
#include "riskdir/synthdata.h"
#include "riskdir/tail_stats.h"

namespace riskdir {

struct CsvOptions {
  double norm_p = 2.0;
  bool log_diff = false;
  // Keep rows whose components are all negative, then negate them.
  bool negative_quadrant = false;
};

inline constexpr std::size_t kMinUsableRows = 100;

struct IngestResult {
  PolarSample sample;
  bool header = false;
  std::size_t rows_read = 0;
  std::size_t quadrant_dropped = 0;
  std::size_t zero_rows_dropped = 0;
};

IngestResult ingest_csv(std::istream& in, const CsvOptions& opt);
IngestResult ingest_csv(const std::string& path, const CsvOptions& opt);

void write_csv(std::ostream& out, const std::vector<std::vector<double>>& rows);

// Named preset ("eight-cone", "eight-cone-weibull1", "pareto-gap:<alpha>",
// "three-tier", "singleton") or path to a JSON model file:
//
//   {"dimension": 2,
//    "cones": [{"arc": [lo, hi], "weight": w, "law": {...}},
//              {"cap": {"center": [...], "radius": r}, "weight": w, "law": {...}},
//              {"point": [...], "weight": w, "law": {...}},
//              {"rest": true, "weight": w, "law": {...}}]}
//
// Arcs are [lo, hi) in radians; "rest" is the complement of the other
// regions. Laws: {"family": "pareto", "alpha", "x_m"},
// {"family": "weibull", "beta", "lambda"}, {"family": "lognormal", "mu",
// "sigma"}. For d = 2 a missing weight defaults to the arc length / 2 pi.
// A file may instead hold {"elliptical": {"axis_matrix": [[...]], "law": {...},
// "c_multiplier": m}}; such models can only be sampled.
struct ModelSpec {
  std::string name;
  std::optional<ConeMixtureModel> cones;
  std::optional<EllipticalModel> elliptical;
};

ModelSpec load_model(const std::string& spec);
ModelSpec parse_model_json(const std::string& text, const std::string& name);

PolarSample sample_model(const ModelSpec& m, std::size_t n, std::uint64_t seed);

// Serialized report. Reals are rounded to 12 significant digits when the
// report is built, so serialization round-trips exactly.
struct ConfigEcho {
  std::string command;
  std::string input;
  std::string model;
  double norm_p = 2.0;
  double tolerance_c = 0.5;
  std::string threshold_kind = "top_fraction";
  double threshold_value = 0.005;
  double ball_mass = 0.1;
  int grid = 360;
  std::uint64_t seed = 1;
  std::size_t min_reliable = kMinReliableCount;
  int levels = 1;
  bool log_diff = false;
  bool negative_quadrant = false;
  double perturb = 0.0;
  std::size_t n = 0;
  bool operator==(const ConfigEcho&) const = default;
};

struct DiagnosticRecord {
  bool available = false;
  std::string error;
  std::size_t tail_points = 0;
  std::vector<std::pair<double, double>> knots;
  double ratio_slope = 0.0;
  bool ratio_decreasing = false;
  double concave_fraction = 0.0;
  bool concave = false;
  bool operator==(const DiagnosticRecord&) const = default;
};

struct VerdictRecord {
  std::vector<double> v;
  std::optional<double> angle;  // d = 2 only
  double s_v = 0.0;
  double g_value = 0.0;  // may be +inf
  std::size_t in_ball = 0;
  bool accepted = false;
  bool reliable = false;
  bool operator==(const VerdictRecord&) const = default;
};

struct BallRecord {
  std::vector<double> center;
  double radius = 0.0;
  bool closed = false;
  bool operator==(const BallRecord&) const = default;
};

struct ArcRecord {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;
  bool operator==(const ArcRecord&) const = default;
};

struct TailPoint {
  std::vector<double> u;
  double radius = 0.0;
  bool operator==(const TailPoint&) const = default;
};

struct LevelRecord {
  std::size_t sample_size = 0;
  double threshold_k = 0.0;
  std::size_t n_exceedances = 0;
  double removed_fraction = 0.0;
  bool empty = false;
  std::vector<ArcRecord> arcs;  // d = 2
  std::vector<BallRecord> positive;
  std::vector<BallRecord> negative;
  std::vector<VerdictRecord> verdicts;
  std::vector<TailPoint> tail_points;
  std::vector<std::string> warnings;
  bool operator==(const LevelRecord&) const = default;
};

struct OracleRecord {
  double hausdorff = 0.0;
  double bound = 0.0;
  std::vector<ArcRecord> estimate_arcs;
  std::vector<ArcRecord> true_arcs;
  bool operator==(const OracleRecord&) const = default;
};

struct EstimateReport {
  ConfigEcho config;
  std::size_t dim = 2;
  DiagnosticRecord diagnostics;
  std::vector<LevelRecord> levels;
  std::optional<OracleRecord> oracle;
  std::string stop_reason;
  std::vector<std::string> warnings;
  bool operator==(const EstimateReport&) const = default;
};

inline constexpr std::size_t kMaxReportedTailPoints = 5000;

double round12(double x);

DiagnosticRecord make_diagnostic(const PolarSample& s, double upper_fraction = 0.1);
LevelRecord make_level(const EstimateS& e, const PolarSample& s, double removed_fraction);
std::vector<ArcRecord> make_arcs(const ArcSet& arcs);

std::string serialize_report(const EstimateReport& r);
EstimateReport parse_report(const std::string& text);

// Unit-circle scatter of the tail points of level 1 with each level's
// estimate drawn as arcs. d = 2 only.
std::string render_svg(const EstimateReport& r);
// One row per verdict of each level; used for d > 2.
std::string render_plot_csv(const EstimateReport& r);

}  // namespace riskdir

#endif  // RISKDIR_CLI_IO_H_
