#include "riskdir/cli_io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "riskdir/error.h"

namespace riskdir {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<double> parse_number(std::string_view cell) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
    return std::nullopt;
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    cells.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

std::string where(std::size_t line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

IngestResult ingest_csv(std::istream& in, const CsvOptions& opt) {
  if (!(opt.norm_p >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "norm p must be >= 1");
  bool header = false;
  bool first = true;
  std::size_t d = 0;
  std::size_t line_no = 0;
  std::vector<std::vector<double>> raw;
  std::vector<std::size_t> raw_lines;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    std::vector<double> row;
    row.reserve(cells.size());
    std::size_t bad = cells.size();
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const auto v = parse_number(cells[j]);
      if (!v) {
        bad = j;
        break;
      }
      row.push_back(*v);
    }
    if (first && bad != cells.size()) {
      header = true;
      first = false;
      continue;
    }
    if (d == 0) {
      d = cells.size();
      if (d < 2) {
        throw Error(ErrorCode::kInvalidArgument,
                    "input has " + std::to_string(d) + " column; at least 2 are required");
      }
    }
    first = false;
    if (cells.size() != d) {
      throw Error(ErrorCode::kParse, where(line_no) + "expected " + std::to_string(d) +
                                         " columns, found " + std::to_string(cells.size()));
    }
    if (bad != cells.size()) {
      throw Error(ErrorCode::kParse, where(line_no) + "column " + std::to_string(bad + 1) +
                                         " is not a number");
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kParse, where(line_no) + "non-finite value");
      }
    }
    raw.push_back(std::move(row));
    raw_lines.push_back(line_no);
  }
  const std::size_t rows_read = raw.size();
  std::size_t quadrant_dropped = 0;
  std::size_t zero_rows_dropped = 0;

  std::vector<std::vector<double>> rows;
  if (opt.log_diff) {
    for (std::size_t t = 0; t < raw.size(); ++t) {
      for (double v : raw[t]) {
        if (!(v > 0.0)) {
          throw Error(ErrorCode::kParse,
                      where(raw_lines[t]) + "log-differences need positive values");
        }
      }
      if (t == 0) continue;
      std::vector<double> r(d);
      for (std::size_t j = 0; j < d; ++j) r[j] = std::log(raw[t][j]) - std::log(raw[t - 1][j]);
      rows.push_back(std::move(r));
    }
  } else {
    rows = std::move(raw);
  }

  std::vector<std::vector<double>> usable;
  for (auto& r : rows) {
    if (opt.negative_quadrant) {
      const bool all_negative =
          std::all_of(r.begin(), r.end(), [](double v) { return v < 0.0; });
      if (!all_negative) {
        ++quadrant_dropped;
        continue;
      }
      for (double& v : r) v = -v;
    }
    if (std::all_of(r.begin(), r.end(), [](double v) { return v == 0.0; })) {
      ++zero_rows_dropped;
      continue;
    }
    usable.push_back(std::move(r));
  }
  if (usable.size() < kMinUsableRows) {
    throw Error(ErrorCode::kInsufficientData,
                "only " + std::to_string(usable.size()) + " usable rows; at least " +
                    std::to_string(kMinUsableRows) + " are required");
  }
  return {polar_decompose(usable, opt.norm_p), header, rows_read, quadrant_dropped,
          zero_rows_dropped};
}

IngestResult ingest_csv(const std::string& path, const CsvOptions& opt) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return ingest_csv(in, opt);
}

void write_csv(std::ostream& out, const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return;
  for (std::size_t j = 0; j < rows.front().size(); ++j) {
    out << (j ? "," : "") << "x" << (j + 1);
  }
  out << "\n";
  char buf[32];
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", r[j]);
      out << (j ? "," : "") << buf;
    }
    out << "\n";
  }
}

// ---------------------------------------------------------------- models

namespace {

[[noreturn]] void model_error(const std::string& msg) {
  throw Error(ErrorCode::kInvalidArgument, "model: " + msg);
}

double get_num(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    model_error(std::string("missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

UnitVector get_vector(const Json& j) {
  if (!j.is_array()) model_error("expected a coordinate array");
  return UnitVector(j.get<std::vector<double>>());
}

RadialLaw parse_law(const Json& j) {
  if (!j.is_object() || !j.contains("family")) model_error("law needs a family");
  const std::string f = j.at("family").get<std::string>();
  if (f == "pareto") return RadialLaw::pareto(get_num(j, "alpha"), get_num(j, "x_m"));
  if (f == "weibull") return RadialLaw::weibull(get_num(j, "beta"), get_num(j, "lambda"));
  if (f == "lognormal") return RadialLaw::lognormal(get_num(j, "mu"), get_num(j, "sigma"));
  model_error("unknown law family '" + f + "'");
}

}  // namespace

ModelSpec parse_model_json(const std::string& text, const std::string& name) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    model_error(std::string("invalid JSON: ") + e.what());
  }
  ModelSpec spec{name, std::nullopt, std::nullopt};
  try {
    if (j.contains("elliptical")) {
      const Json& e = j.at("elliptical");
      EllipticalModel m;
      m.axis_matrix = e.at("axis_matrix").get<std::vector<std::vector<double>>>();
      m.base = parse_law(e.at("law"));
      if (e.contains("c_multiplier")) m.c_multiplier = e.at("c_multiplier").get<double>();
      std::vector<double> probe(m.dim(), 0.0);
      probe.front() = 1.0;
      elliptical_c(m, UnitVector(std::move(probe)));  // validates the matrix
      spec.elliptical = std::move(m);
      return spec;
    }
    const auto d = static_cast<std::size_t>(get_num(j, "dimension"));
    if (d < 2) model_error("dimension must be >= 2");
    if (!j.contains("cones") || !j.at("cones").is_array() || j.at("cones").empty()) {
      model_error("needs a non-empty 'cones' array");
    }
    ConeMixtureModel model;
    model.dim = d;
    std::optional<std::size_t> rest;
    for (const Json& c : j.at("cones")) {
      CapSet region = CapSet::empty(d);
      if (c.contains("arc")) {
        if (d != 2) model_error("arcs need dimension 2");
        const auto a = c.at("arc").get<std::vector<double>>();
        if (a.size() != 2) model_error("arc needs [lo, hi]");
        region = CapSet::from_arcs(ArcSet::interval(a[0], a[1], true, false));
      } else if (c.contains("cap")) {
        const Json& cap = c.at("cap");
        region = CapSet::from_ball(
            GeodesicBall::closed_ball(get_vector(cap.at("center")), get_num(cap, "radius")));
      } else if (c.contains("point")) {
        region = CapSet::from_ball(GeodesicBall::closed_ball(get_vector(c.at("point")), 0.0));
      } else if (c.value("rest", false)) {
        if (rest) model_error("only one 'rest' cone is allowed");
        rest = model.cones.size();
      } else {
        model_error("cone needs one of arc, cap, point, rest");
      }
      if (region.dim() != d) model_error("region dimension differs from 'dimension'");
      double w = 0.0;
      if (c.contains("weight")) {
        w = c.at("weight").get<double>();
      } else if (d == 2) {
        // The rest region is filled in below.
        w = rest && *rest == model.cones.size() ? -1.0 : region.arcs().measure() / kTwoPi;
      } else {
        model_error("cone weight missing");
      }
      model.cones.push_back({std::move(region), w, parse_law(c.at("law"))});
    }
    if (rest) {
      CapSet r = CapSet::full(d);
      for (std::size_t i = 0; i < model.cones.size(); ++i) {
        if (i != *rest) r = r.subtract(model.cones[i].region);
      }
      if (model.cones[*rest].weight < 0.0) model.cones[*rest].weight = r.arcs().measure() / kTwoPi;
      model.cones[*rest].region = std::move(r);
    }
    model.validate();
    spec.cones = std::move(model);
  } catch (const Json::exception& e) {
    model_error(e.what());
  }
  return spec;
}

ModelSpec load_model(const std::string& spec) {
  ModelSpec m{spec, std::nullopt, std::nullopt};
  if (spec == "eight-cone") {
    m.cones = default_eight_cone_model();
  } else if (spec == "eight-cone-weibull1") {
    m.cones = default_eight_cone_model(1.0);
  } else if (spec.rfind("pareto-gap:", 0) == 0) {
    const auto a = parse_number(std::string_view(spec).substr(11));
    if (!a) model_error("pareto-gap needs a numeric alpha");
    m.cones = pareto_gap_model(*a);
  } else if (spec == "three-tier") {
    m.cones = three_tier_model(RadialLaw::weibull(0.5, kDefaultLightWeibullRate));
  } else if (spec == "singleton") {
    m.cones = default_singleton_model();
  } else {
    std::ifstream in(spec);
    if (!in) model_error("unknown preset or unreadable file '" + spec + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_model_json(buf.str(), spec);
  }
  return m;
}

PolarSample sample_model(const ModelSpec& m, std::size_t n, std::uint64_t seed) {
  if (m.cones) return sample_cone_mixture(*m.cones, n, seed);
  if (m.elliptical) return sample_elliptical(*m.elliptical, n, seed);
  model_error("empty model");
}

// ---------------------------------------------------------------- report

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

namespace {

std::vector<double> round_all(std::span<const double> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(round12(x));
  return out;
}

BallRecord make_ball(const GeodesicBall& b) {
  return {round_all(b.center().coords()), round12(b.radius()), b.closed()};
}

}  // namespace

std::vector<ArcRecord> make_arcs(const ArcSet& arcs) {
  std::vector<ArcRecord> out;
  for (const auto& c : arcs.components()) {
    out.push_back({round12(c.lo), round12(c.hi), c.lo_closed, c.hi_closed});
  }
  return out;
}

DiagnosticRecord make_diagnostic(const PolarSample& s, double upper_fraction) {
  DiagnosticRecord r;
  try {
    const auto d = heavy_tail_diagnostic(s, upper_fraction);
    r.available = true;
    r.tail_points = d.tail_points;
    for (const auto& k : d.knots) r.knots.emplace_back(round12(k.k), round12(k.h));
    r.ratio_slope = round12(d.ratio_slope);
    r.ratio_decreasing = d.ratio_decreasing;
    r.concave_fraction = round12(d.concave_fraction);
    r.concave = d.concave;
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

LevelRecord make_level(const EstimateS& e, const PolarSample& s, double removed_fraction) {
  LevelRecord l;
  l.sample_size = s.size();
  l.threshold_k = round12(e.threshold_k);
  l.n_exceedances = e.n_exceedances;
  l.removed_fraction = round12(removed_fraction);
  l.empty = e.estimate.is_empty();
  if (s.dim() == 2) l.arcs = make_arcs(e.estimate.arcs());
  for (const auto& b : e.estimate.positive()) l.positive.push_back(make_ball(b));
  for (const auto& b : e.estimate.negative()) l.negative.push_back(make_ball(b));
  for (const auto& v : e.verdicts) {
    VerdictRecord r;
    r.v = round_all(v.v.coords());
    if (s.dim() == 2) r.angle = round12(v.v.angle());
    r.s_v = round12(v.s_v);
    r.g_value = round12(v.g_value);
    r.in_ball = v.in_ball;
    r.accepted = v.accepted;
    r.reliable = v.reliable;
    l.verdicts.push_back(std::move(r));
  }
  const auto idx = s.sorted_index();
  const std::size_t top = std::min(e.n_exceedances, kMaxReportedTailPoints);
  for (std::size_t i = 0; i < top; ++i) {
    l.tail_points.push_back(
        {round_all(s.directions()[idx[i]].coords()), round12(s.radii()[idx[i]])});
  }
  l.warnings = e.warnings;
  return l;
}

namespace {

Json jnum(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double num(const Json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw Error(ErrorCode::kParse, "report: bad number '" + s + "'");
}

Json arcs_json(const std::vector<ArcRecord>& arcs) {
  Json a = Json::array();
  for (const auto& r : arcs) {
    a.push_back({{"lo", r.lo}, {"hi", r.hi}, {"lo_closed", r.lo_closed}, {"hi_closed", r.hi_closed}});
  }
  return a;
}

std::vector<ArcRecord> arcs_from(const Json& a) {
  std::vector<ArcRecord> out;
  for (const auto& r : a) {
    out.push_back({num(r.at("lo")), num(r.at("hi")), r.at("lo_closed").get<bool>(),
                   r.at("hi_closed").get<bool>()});
  }
  return out;
}

Json balls_json(const std::vector<BallRecord>& balls) {
  Json a = Json::array();
  for (const auto& b : balls) {
    a.push_back({{"center", b.center}, {"radius", b.radius}, {"closed", b.closed}});
  }
  return a;
}

std::vector<BallRecord> balls_from(const Json& a) {
  std::vector<BallRecord> out;
  for (const auto& b : a) {
    out.push_back({b.at("center").get<std::vector<double>>(), num(b.at("radius")),
                   b.at("closed").get<bool>()});
  }
  return out;
}

}  // namespace

std::string serialize_report(const EstimateReport& r) {
  const ConfigEcho& c = r.config;
  Json j;
  j["config"] = {{"command", c.command},
                 {"input", c.input},
                 {"model", c.model},
                 {"norm_p", c.norm_p},
                 {"tolerance_c", c.tolerance_c},
                 {"threshold_kind", c.threshold_kind},
                 {"threshold_value", c.threshold_value},
                 {"ball_mass", c.ball_mass},
                 {"grid", c.grid},
                 {"seed", c.seed},
                 {"min_reliable", c.min_reliable},
                 {"levels", c.levels},
                 {"log_diff", c.log_diff},
                 {"negative_quadrant", c.negative_quadrant},
                 {"perturb", c.perturb},
                 {"n", c.n}};
  j["dimension"] = r.dim;
  const DiagnosticRecord& d = r.diagnostics;
  Json knots = Json::array();
  for (const auto& [k, h] : d.knots) knots.push_back({k, h});
  j["diagnostics"] = {{"available", d.available},
                      {"error", d.error},
                      {"tail_points", d.tail_points},
                      {"knots", knots},
                      {"ratio_slope", d.ratio_slope},
                      {"ratio_decreasing", d.ratio_decreasing},
                      {"concave_fraction", d.concave_fraction},
                      {"concave", d.concave}};
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    Json verdicts = Json::array();
    for (const auto& v : l.verdicts) {
      Json vj = {{"v", v.v}};
      if (v.angle) vj["angle"] = *v.angle;
      vj["s_v"] = v.s_v;
      vj["g"] = jnum(v.g_value);
      vj["in_ball"] = v.in_ball;
      vj["accepted"] = v.accepted;
      vj["reliable"] = v.reliable;
      verdicts.push_back(std::move(vj));
    }
    Json tail = Json::array();
    for (const auto& t : l.tail_points) tail.push_back({{"u", t.u}, {"r", t.radius}});
    levels.push_back({{"sample_size", l.sample_size},
                      {"threshold_k", l.threshold_k},
                      {"n_exceedances", l.n_exceedances},
                      {"removed_fraction", l.removed_fraction},
                      {"empty", l.empty},
                      {"arcs", arcs_json(l.arcs)},
                      {"positive", balls_json(l.positive)},
                      {"negative", balls_json(l.negative)},
                      {"warnings", l.warnings},
                      {"verdicts", verdicts},
                      {"tail_points", tail}});
  }
  j["levels"] = levels;
  if (r.oracle) {
    j["oracle"] = {{"hausdorff", jnum(r.oracle->hausdorff)},
                   {"bound", r.oracle->bound},
                   {"estimate_arcs", arcs_json(r.oracle->estimate_arcs)},
                   {"true_arcs", arcs_json(r.oracle->true_arcs)}};
  }
  j["stop_reason"] = r.stop_reason;
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

EstimateReport parse_report(const std::string& text) {
  EstimateReport r;
  try {
    const Json j = Json::parse(text);
    const Json& c = j.at("config");
    ConfigEcho& e = r.config;
    e.command = c.at("command").get<std::string>();
    e.input = c.at("input").get<std::string>();
    e.model = c.at("model").get<std::string>();
    e.norm_p = num(c.at("norm_p"));
    e.tolerance_c = num(c.at("tolerance_c"));
    e.threshold_kind = c.at("threshold_kind").get<std::string>();
    e.threshold_value = num(c.at("threshold_value"));
    e.ball_mass = num(c.at("ball_mass"));
    e.grid = c.at("grid").get<int>();
    e.seed = c.at("seed").get<std::uint64_t>();
    e.min_reliable = c.at("min_reliable").get<std::size_t>();
    e.levels = c.at("levels").get<int>();
    e.log_diff = c.at("log_diff").get<bool>();
    e.negative_quadrant = c.at("negative_quadrant").get<bool>();
    e.perturb = num(c.at("perturb"));
    e.n = c.at("n").get<std::size_t>();
    r.dim = j.at("dimension").get<std::size_t>();
    const Json& d = j.at("diagnostics");
    DiagnosticRecord& dr = r.diagnostics;
    dr.available = d.at("available").get<bool>();
    dr.error = d.at("error").get<std::string>();
    dr.tail_points = d.at("tail_points").get<std::size_t>();
    for (const auto& k : d.at("knots")) dr.knots.emplace_back(num(k.at(0)), num(k.at(1)));
    dr.ratio_slope = num(d.at("ratio_slope"));
    dr.ratio_decreasing = d.at("ratio_decreasing").get<bool>();
    dr.concave_fraction = num(d.at("concave_fraction"));
    dr.concave = d.at("concave").get<bool>();
    for (const auto& lj : j.at("levels")) {
      LevelRecord l;
      l.sample_size = lj.at("sample_size").get<std::size_t>();
      l.threshold_k = num(lj.at("threshold_k"));
      l.n_exceedances = lj.at("n_exceedances").get<std::size_t>();
      l.removed_fraction = num(lj.at("removed_fraction"));
      l.empty = lj.at("empty").get<bool>();
      l.arcs = arcs_from(lj.at("arcs"));
      l.positive = balls_from(lj.at("positive"));
      l.negative = balls_from(lj.at("negative"));
      l.warnings = lj.at("warnings").get<std::vector<std::string>>();
      for (const auto& vj : lj.at("verdicts")) {
        VerdictRecord v;
        v.v = vj.at("v").get<std::vector<double>>();
        if (vj.contains("angle")) v.angle = num(vj.at("angle"));
        v.s_v = num(vj.at("s_v"));
        v.g_value = num(vj.at("g"));
        v.in_ball = vj.at("in_ball").get<std::size_t>();
        v.accepted = vj.at("accepted").get<bool>();
        v.reliable = vj.at("reliable").get<bool>();
        l.verdicts.push_back(std::move(v));
      }
      for (const auto& t : lj.at("tail_points")) {
        l.tail_points.push_back({t.at("u").get<std::vector<double>>(), num(t.at("r"))});
      }
      r.levels.push_back(std::move(l));
    }
    if (j.contains("oracle")) {
      const Json& o = j.at("oracle");
      r.oracle = OracleRecord{num(o.at("hausdorff")), num(o.at("bound")),
                              arcs_from(o.at("estimate_arcs")), arcs_from(o.at("true_arcs"))};
    }
    r.stop_reason = j.at("stop_reason").get<std::string>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("report: ") + e.what());
  }
  return r;
}

// ---------------------------------------------------------------- plots

namespace {

constexpr double kCx = 320.0;
constexpr double kCy = 320.0;
constexpr double kUnit = 200.0;
constexpr const char* kLevelColors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#8c564b"};

std::string fmt2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string point(double radius, double theta) {
  return fmt2(kCx + radius * std::cos(theta)) + " " + fmt2(kCy - radius * std::sin(theta));
}

}  // namespace

std::string render_svg(const EstimateReport& r) {
  if (r.dim != 2) {
    throw Error(ErrorCode::kUnsupported, "SVG plots are drawn for d = 2 only");
  }
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
        "viewBox=\"0 0 640 640\">\n";
  os << "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
  os << "<circle cx=\"" << fmt2(kCx) << "\" cy=\"" << fmt2(kCy) << "\" r=\"" << fmt2(kUnit)
     << "\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  if (!r.levels.empty()) {
    const LevelRecord& first = r.levels.front();
    // Tail points sit outside the circle at a log-scaled distance.
    double rmax = first.threshold_k;
    for (const auto& t : first.tail_points) rmax = std::max(rmax, t.radius);
    const double span = std::log(std::max(rmax / first.threshold_k, 1.0 + 1e-9));
    os << "<g fill=\"#333\" fill-opacity=\"0.6\">\n";
    for (const auto& t : first.tail_points) {
      const double theta = std::atan2(t.u[1], t.u[0]);
      const double rel = std::log(std::max(t.radius / first.threshold_k, 1.0)) / span;
      os << "<circle cx=\"" << fmt2(kCx + (kUnit + 10.0 + 90.0 * rel) * std::cos(theta))
         << "\" cy=\"" << fmt2(kCy - (kUnit + 10.0 + 90.0 * rel) * std::sin(theta))
         << "\" r=\"1.5\"/>\n";
    }
    os << "</g>\n";
    os << "<g stroke-width=\"1\">\n";
    for (const auto& v : first.verdicts) {
      const double theta = std::atan2(v.v[1], v.v[0]);
      os << "<path d=\"M " << point(kUnit - 30.0, theta) << " L " << point(kUnit - 22.0, theta)
         << "\" stroke=\"" << (v.accepted ? "#2ca02c" : (v.reliable ? "#d62728" : "#bbb"))
         << "\"/>\n";
    }
    os << "</g>\n";
  }
  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    const char* color = kLevelColors[i % 5];
    const double rad = kUnit - 6.0 * static_cast<double>(i);
    for (const auto& a : r.levels[i].arcs) {
      if (a.hi - a.lo >= kTwoPi - 1e-12) {
        os << "<circle cx=\"" << fmt2(kCx) << "\" cy=\"" << fmt2(kCy) << "\" r=\"" << fmt2(rad)
           << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"5\"/>\n";
        continue;
      }
      os << "<path d=\"M " << point(rad, a.lo) << " A " << fmt2(rad) << " " << fmt2(rad)
         << " 0 " << (a.hi - a.lo > kPi ? 1 : 0) << " 0 " << point(rad, a.hi)
         << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"5\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_plot_csv(const EstimateReport& r) {
  std::ostringstream os;
  os << "level,index";
  for (std::size_t j = 0; j < r.dim; ++j) os << ",v" << (j + 1);
  os << ",s_v,g,in_ball,accepted,reliable\n";
  char buf[32];
  auto put = [&](double x) {
    if (std::isinf(x)) {
      os << "inf";
    } else {
      std::snprintf(buf, sizeof buf, "%.12g", x);
      os << buf;
    }
  };
  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    const auto& verdicts = r.levels[i].verdicts;
    for (std::size_t k = 0; k < verdicts.size(); ++k) {
      const auto& v = verdicts[k];
      os << (i + 1) << "," << k;
      for (double x : v.v) {
        os << ",";
        put(x);
      }
      os << ",";
      put(v.s_v);
      os << ",";
      put(v.g_value);
      os << "," << v.in_ball << "," << (v.accepted ? 1 : 0) << "," << (v.reliable ? 1 : 0)
         << "\n";
    }
  }
  return os.str();
}

}  // namespace riskdir
