#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "udw/errors.hpp"
#include "udw/measures.hpp"
#include "udw/params.hpp"
#include "udw/quadrature.hpp"
#include "udw/series.hpp"
#include "udw/state.hpp"

namespace udw {

enum class Axis { L_meters, aL, lambda };
enum class Scale { linear, log, custom };
enum class ThresholdTarget { separability, coherent_information };

inline const char* to_string(Axis a) {
  switch (a) {
    case Axis::L_meters: return "L_meters";
    case Axis::aL: return "aL";
    case Axis::lambda: return "lambda";
  }
  return "?";
}

inline const char* to_string(Scale s) {
  switch (s) {
    case Scale::linear: return "linear";
    case Scale::log: return "log";
    case Scale::custom: return "custom";
  }
  return "?";
}

inline const char* to_string(ThresholdTarget t) {
  return t == ThresholdTarget::separability ? "separability" : "coherent_information";
}

/// Range form of the sweep points. Explicit lists use Scale::custom.
struct PointRange {
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  Scale scale = Scale::linear;
};

struct SweepSpec {
  DimensionlessParams base;
  /// Acceleration in Hz; required to convert a separation in meters.
  std::optional<double> acceleration;
  Axis axis = Axis::aL;
  std::vector<double> points;
  std::optional<PointRange> range;  ///< set when points were generated
  MeasureSelection measures;
  SeriesControl series;
  QuadratureControl quadrature;
  OptimizerControl optimizer;
  int workers = 1;
  ThresholdTarget threshold = ThresholdTarget::separability;

  void validate() const {
    if (points.empty()) throw ValidationError("points", "must not be empty");
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!std::isfinite(points[i])) throw ValidationError("points", "must be finite");
      if (i > 0 && !(points[i] > points[i - 1]))
        throw ValidationError("points", "must be strictly increasing");
    }
    if (axis == Axis::lambda) {
      if (points.front() < 0.0 || points.back() > 1.0)
        throw ValidationError("points", "lambda values must lie in [0, 1]");
    } else if (points.front() < 0.0) {
      throw ValidationError("points", "separations must be >= 0");
    }
    if (axis == Axis::L_meters && !acceleration)
      throw ValidationError("acceleration", "required for an L_meters axis");
    if (workers < 1) throw ValidationError("workers", "must be >= 1");
    series.validate();
    quadrature.validate();
    optimizer.validate();
  }

  /// Parameters at one axis value.
  DimensionlessParams at(double v) const {
    switch (axis) {
      case Axis::lambda:
        return params_from_dimensionless(base.a_sigma, base.sigma_delta, base.aL, v);
      case Axis::aL:
        return params_from_dimensionless(base.a_sigma, base.sigma_delta, v, base.lambda);
      case Axis::L_meters:
        return params_from_dimensionless(base.a_sigma, base.sigma_delta,
                                         *acceleration * v / speed_of_light, base.lambda);
    }
    return base;
  }
};

inline std::vector<double> generate_points(const PointRange& r) {
  if (r.count < 1) throw ValidationError("count", "must be >= 1");
  if (r.count == 1) return {r.min};
  if (!(r.max > r.min)) throw ValidationError("max", "must exceed min");
  std::vector<double> pts(static_cast<std::size_t>(r.count));
  const double n = static_cast<double>(r.count - 1);
  if (r.scale == Scale::log) {
    if (!(r.min > 0.0)) throw ValidationError("min", "must be > 0 on a log scale");
    const double lo = std::log(r.min);
    const double hi = std::log(r.max);
    for (int i = 0; i < r.count; ++i) pts[static_cast<std::size_t>(i)] = std::exp(lo + (hi - lo) * i / n);
  } else {
    for (int i = 0; i < r.count; ++i)
      pts[static_cast<std::size_t>(i)] = r.min + (r.max - r.min) * i / n;
  }
  pts.front() = r.min;
  pts.back() = r.max;
  return pts;
}

struct SweepRow {
  double axis_value = 0.0;
  double aL = 0.0;
  double lambda = 0.0;
  MatrixElements elements;
  XState state;
  double trace = 0.0;
  BoundsReport bounds;
  std::string error;  ///< empty when the point evaluated cleanly
};

/// One point: elements, fourth-order state, requested measures.
inline SweepRow evaluate_point(const SweepSpec& spec, double v) {
  SweepRow row;
  row.axis_value = v;
  try {
    const DimensionlessParams d = spec.at(v);
    row.aL = d.aL;
    row.lambda = d.lambda;
    row.elements = matrix_elements(d, spec.series, spec.quadrature);
    row.state = assemble_fourth_order(row.elements);
    row.trace = row.state.trace();
    row.bounds = evaluate_bounds(row.state, spec.measures, spec.optimizer);
  } catch (const Error& e) {
    row.error = std::string(e.kind() == ErrorKind::validation ? "validation" : "numerical") +
                ": " + e.what();
  }
  return row;
}

/// Evaluates every point; rows come back in axis order whatever the worker
/// count.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows(spec.points.size());
  const int workers = std::min<int>(spec.workers, static_cast<int>(spec.points.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = evaluate_point(spec, spec.points[i]);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < rows.size(); i = next++)
        rows[i] = evaluate_point(spec, spec.points[i]);
    });
  }
  for (auto& t : pool) t.join();
  return rows;
}

namespace sweep_detail {

inline bool positive_side(const SweepRow& r, ThresholdTarget t) {
  if (t == ThresholdTarget::separability) return r.bounds.concurrence > 0.0;
  return r.bounds.coherent_info > 0.0;
}

}  // namespace sweep_detail

inline constexpr double threshold_rel_tol = 1e-3;

/// Bisection for the axis value where the target measure stops being
/// positive (concurrence for separability, coherent information otherwise).
/// The bracket is the first adjacent pair of sweep points on opposite sides.
inline double find_threshold(const SweepSpec& spec, ThresholdTarget target) {
  spec.validate();
  SweepSpec local = spec;
  local.measures = MeasureSelection{};
  local.measures.esq_id = false;
  local.measures.coh_info = target == ThresholdTarget::coherent_information;

  auto side = [&](double v) {
    SweepRow r = evaluate_point(local, v);
    if (!r.error.empty())
      throw NonConvergence("threshold search hit a failing point at " +
                           std::to_string(v) + ": " + r.error);
    return sweep_detail::positive_side(r, target);
  };

  double lo = spec.points.front();
  bool lo_side = side(lo);
  double hi = lo;
  bool found = false;
  for (std::size_t i = 1; i < spec.points.size(); ++i) {
    const double v = spec.points[i];
    const bool s = side(v);
    if (s != lo_side) {
      hi = v;
      found = true;
      break;
    }
    lo = v;
  }
  if (!found)
    throw NoBracket(std::string("the ") + to_string(target) +
                    " measure does not change sign over the sweep range");

  const bool geometric = lo > 0.0 && hi / lo > 10.0;
  for (int it = 0; it < 200 && (hi - lo) > threshold_rel_tol * std::abs(hi); ++it) {
    const double mid = geometric ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (side(mid) == lo_side) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace csv_detail {

inline std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

inline std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline double parse_number(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw IoError("malformed number '" + s + "'");
  return v;
}

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

struct Column {
  std::string name;
  double (*get)(const SweepRow&) = nullptr;
  void (*set)(SweepRow&, double) = nullptr;
};

#define UDW_COL(name, expr)                                             \
  Column {                                                              \
    name, [](const SweepRow& r) -> double { return (expr); },  \
        [](SweepRow& r, double v) { (expr) = v; }                       \
  }
#define UDW_COL_CPLX(name, field, part)                                                       \
  Column {                                                                                    \
    name, [](const SweepRow& r) -> double { return r.field.part(); },                \
        [](SweepRow& r, double v) { r.field.part(v); }                                        \
  }
#define UDW_COL_INT(name, expr)                                                         \
  Column {                                                                              \
    name, [](const SweepRow& r) -> double { return static_cast<double>(expr); }, \
        [](SweepRow& r, double v) { (expr) = static_cast<decltype(expr)>(v); }           \
  }

inline std::vector<Column> columns(const MeasureSelection& m) {
  std::vector<Column> cols = {
      UDW_COL("axis_value", r.axis_value),
      UDW_COL("aL", r.aL),
      UDW_COL("lambda", r.lambda),
      UDW_COL_CPLX("I1_re", elements.I1, real),
      UDW_COL_CPLX("I1_im", elements.I1, imag),
      UDW_COL_CPLX("I2_re", elements.I2, real),
      UDW_COL_CPLX("I2_im", elements.I2, imag),
      UDW_COL_CPLX("I3_re", elements.I3, real),
      UDW_COL_CPLX("I3_im", elements.I3, imag),
      UDW_COL_CPLX("I4_re", elements.I4, real),
      UDW_COL_CPLX("I4_im", elements.I4, imag),
      UDW_COL("I2_error", r.elements.I2_error),
      UDW_COL("I3_error", r.elements.I3_error),
      UDW_COL("a1", r.state.a1),
      UDW_COL("b1", r.state.b1),
      UDW_COL("a2", r.state.a2),
      UDW_COL("b2", r.state.b2),
      UDW_COL_CPLX("c1_re", state.c1, real),
      UDW_COL_CPLX("c1_im", state.c1, imag),
      UDW_COL_CPLX("c2_re", state.c2, real),
      UDW_COL_CPLX("c2_im", state.c2, imag),
      UDW_COL("trace", r.trace),
      UDW_COL("min_eigenvalue", r.bounds.min_eigenvalue),
  };
  const bool any = m.eof || m.coh_info || m.esq_id || m.esq_opt || m.bmax || m.negativity;
  if (any) {
    cols.push_back(UDW_COL_INT("ppt", r.bounds.ppt));
    cols.push_back(UDW_COL("concurrence", r.bounds.concurrence));
  }
  if (m.negativity) cols.push_back(UDW_COL("negativity", r.bounds.negativity));
  if (m.eof) cols.push_back(UDW_COL("eof", r.bounds.eof));
  if (m.coh_info) cols.push_back(UDW_COL("coh_info", r.bounds.coherent_info));
  if (m.esq_id) cols.push_back(UDW_COL("esq_id", r.bounds.esq_id));
  if (m.esq_opt) {
    cols.push_back(UDW_COL("esq_opt", r.bounds.esq_opt));
    cols.push_back(UDW_COL_INT("esq_restarts", r.bounds.esq_diagnostics.restarts));
    cols.push_back(UDW_COL_INT("esq_best_restart", r.bounds.esq_diagnostics.best_restart));
    cols.push_back(UDW_COL_INT("esq_converged", r.bounds.esq_diagnostics.converged_restarts));
    cols.push_back(UDW_COL_INT("esq_evaluations", r.bounds.esq_diagnostics.evaluations));
  }
  if (m.bmax) {
    cols.push_back(UDW_COL("bmax", r.bounds.bmax));
    cols.push_back(UDW_COL_INT("bmax_restarts", r.bounds.bmax_diagnostics.restarts));
    cols.push_back(UDW_COL_INT("bmax_best_restart", r.bounds.bmax_diagnostics.best_restart));
    cols.push_back(UDW_COL_INT("bmax_converged", r.bounds.bmax_diagnostics.converged_restarts));
    cols.push_back(UDW_COL_INT("bmax_evaluations", r.bounds.bmax_diagnostics.evaluations));
  }
  return cols;
}

#undef UDW_COL
#undef UDW_COL_CPLX
#undef UDW_COL_INT

inline constexpr const char* provenance_column = "provenance";
inline constexpr const char* error_column = "error";

}  // namespace csv_detail

inline std::string csv_header(const MeasureSelection& m) {
  std::string line;
  for (const auto& c : csv_detail::columns(m)) line += c.name + ",";
  line += std::string(csv_detail::provenance_column) + "," + csv_detail::error_column;
  return line;
}

/// Header plus one line per row; numbers in round-trip scientific notation.
inline void emit_csv(const std::vector<SweepRow>& rows, const MeasureSelection& m,
                     std::ostream& out) {
  const auto cols = csv_detail::columns(m);
  out << csv_header(m) << '\n';
  for (const auto& r : rows) {
    std::string line;
    for (const auto& c : cols) line += csv_detail::number(c.get(r)) + ",";
    line += std::string(to_string(r.elements.provenance)) + "," + csv_detail::quoted(r.error);
    out << line << '\n';
  }
  if (!out) throw IoError("failed writing CSV output");
}

inline void emit_csv(const std::vector<SweepRow>& rows, const MeasureSelection& m,
                     const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  emit_csv(rows, m, f);
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

/// Inverse of emit_csv. The measure selection is recovered from the header.
inline std::vector<SweepRow> parse_csv(std::istream& in, MeasureSelection* selection = nullptr) {
  std::string header;
  if (!std::getline(in, header)) throw IoError("CSV input is empty");
  const auto names = csv_detail::split_line(header);
  auto has = [&](const char* n) { return std::find(names.begin(), names.end(), n) != names.end(); };
  MeasureSelection m;
  m.eof = has("eof");
  m.coh_info = has("coh_info");
  m.esq_id = has("esq_id");
  m.esq_opt = has("esq_opt");
  m.bmax = has("bmax");
  m.negativity = has("negativity");
  if (csv_header(m) != header) throw IoError("CSV header does not match any known layout");
  if (selection) *selection = m;
  const auto cols = csv_detail::columns(m);

  std::vector<SweepRow> rows;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto cells = csv_detail::split_line(line);
    if (cells.size() != cols.size() + 2)
      throw IoError("CSV line " + std::to_string(line_no) + " has " +
                    std::to_string(cells.size()) + " cells");
    SweepRow r;
    for (std::size_t i = 0; i < cols.size(); ++i) cols[i].set(r, csv_detail::parse_number(cells[i]));
    r.elements.provenance =
        cells[cols.size()] == "quadrature" ? Provenance::quadrature : Provenance::series;
    r.error = cells[cols.size() + 1];
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// JSON configuration

namespace config_detail {

using nlohmann::json;

inline Axis parse_axis(const std::string& s) {
  if (s == "L_meters") return Axis::L_meters;
  if (s == "aL") return Axis::aL;
  if (s == "lambda") return Axis::lambda;
  throw ValidationError("axis", "unknown axis '" + s + "'");
}

inline Scale parse_scale(const std::string& s) {
  if (s == "linear") return Scale::linear;
  if (s == "log") return Scale::log;
  if (s == "custom") return Scale::custom;
  throw ValidationError("scale", "unknown scale '" + s + "'");
}

inline ThresholdTarget parse_target(const std::string& s) {
  if (s == "separability") return ThresholdTarget::separability;
  if (s == "coherent_information") return ThresholdTarget::coherent_information;
  throw ValidationError("threshold", "unknown target '" + s + "'");
}

template <class T>
T get(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(key, "has the wrong type");
  }
}

inline void check_keys(const json& j, std::initializer_list<const char*> allowed,
                       const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw ValidationError(where + "." + it.key(), "unknown key");
  }
}

}  // namespace config_detail

/// Builds a spec from the JSON configuration format used by the recipes.
inline SweepSpec spec_from_json(const nlohmann::json& j) {
  using namespace config_detail;
  if (!j.is_object()) throw ValidationError("config", "must be a JSON object");
  check_keys(j, {"physical", "dimensionless", "axis", "points", "measures", "series",
                 "quadrature", "optimizer", "workers", "threshold"},
             "config");
  SweepSpec spec;
  if (j.contains("physical") == j.contains("dimensionless"))
    throw ValidationError("config", "exactly one of 'physical' or 'dimensionless' is required");
  if (j.contains("physical")) {
    const json& p = j.at("physical");
    check_keys(p, {"a", "sigma", "delta", "lambda", "L"}, "physical");
    DetectorParams dp;
    dp.a = get(p, "a", dp.a);
    dp.sigma = get(p, "sigma", dp.sigma);
    dp.delta = get(p, "delta", dp.delta);
    dp.lambda = get(p, "lambda", dp.lambda);
    dp.L = get(p, "L", dp.L);
    spec.base = derive_dimensionless(dp);
    spec.acceleration = dp.a;
  } else {
    const json& p = j.at("dimensionless");
    check_keys(p, {"a_sigma", "sigma_delta", "aL", "lambda", "a"}, "dimensionless");
    spec.base = params_from_dimensionless(get(p, "a_sigma", 1.0), get(p, "sigma_delta", 0.0),
                                          get(p, "aL", 0.0), get(p, "lambda", 0.0));
    if (p.contains("a")) spec.acceleration = get(p, "a", 1.0);
  }
  spec.axis = parse_axis(get<std::string>(j, "axis", "aL"));

  if (!j.contains("points")) throw ValidationError("points", "required");
  const json& pts = j.at("points");
  if (pts.is_array()) {
    try {
      spec.points = pts.get<std::vector<double>>();
    } catch (const json::exception&) {
      throw ValidationError("points", "must be a list of numbers");
    }
  } else if (pts.is_object()) {
    check_keys(pts, {"min", "max", "count", "scale"}, "points");
    PointRange r;
    r.min = get(pts, "min", r.min);
    r.max = get(pts, "max", r.max);
    r.count = get(pts, "count", r.count);
    r.scale = parse_scale(get<std::string>(pts, "scale", "linear"));
    if (r.scale == Scale::custom) throw ValidationError("points.scale", "custom needs a list");
    spec.points = generate_points(r);
    spec.range = r;
  } else {
    throw ValidationError("points", "must be a list or a range object");
  }

  if (j.contains("measures")) {
    MeasureSelection m{false, false, false, false, false, false};
    std::vector<std::string> names;
    try {
      names = j.at("measures").get<std::vector<std::string>>();
    } catch (const json::exception&) {
      throw ValidationError("measures", "must be a list of names");
    }
    for (const auto& n : names) {
      if (n == "eof") m.eof = true;
      else if (n == "coh_info") m.coh_info = true;
      else if (n == "esq_id") m.esq_id = true;
      else if (n == "esq_opt") m.esq_opt = true;
      else if (n == "bmax") m.bmax = true;
      else if (n == "negativity") m.negativity = true;
      else throw ValidationError("measures", "unknown measure '" + n + "'");
    }
    spec.measures = m;
  }
  if (j.contains("series")) {
    const json& s = j.at("series");
    check_keys(s, {"max_terms", "tail_tol"}, "series");
    spec.series.max_terms = get(s, "max_terms", spec.series.max_terms);
    spec.series.tail_tol = get(s, "tail_tol", spec.series.tail_tol);
  }
  if (j.contains("quadrature")) {
    const json& q = j.at("quadrature");
    check_keys(q, {"abs_tol", "rel_tol", "domain_halfwidth", "max_subdivisions"}, "quadrature");
    spec.quadrature.abs_tol = get(q, "abs_tol", spec.quadrature.abs_tol);
    spec.quadrature.rel_tol = get(q, "rel_tol", spec.quadrature.rel_tol);
    spec.quadrature.domain_halfwidth = get(q, "domain_halfwidth", spec.quadrature.domain_halfwidth);
    spec.quadrature.max_subdivisions = get(q, "max_subdivisions", spec.quadrature.max_subdivisions);
  }
  if (j.contains("optimizer")) {
    const json& o = j.at("optimizer");
    check_keys(o, {"restarts", "max_iters", "seed", "x_tol", "f_tol", "initial_step", "workers"},
               "optimizer");
    OptimizerControl& c = spec.optimizer;
    c.restarts = get(o, "restarts", c.restarts);
    c.max_iters = get(o, "max_iters", c.max_iters);
    c.seed = get(o, "seed", c.seed);
    c.x_tol = get(o, "x_tol", c.x_tol);
    c.f_tol = get(o, "f_tol", c.f_tol);
    c.initial_step = get(o, "initial_step", c.initial_step);
    c.workers = get(o, "workers", c.workers);
  }
  spec.workers = get(j, "workers", spec.workers);
  spec.threshold = parse_target(get<std::string>(j, "threshold", "separability"));
  spec.validate();
  return spec;
}

inline SweepSpec load_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config", std::string("parse error: ") + e.what());
  }
  return spec_from_json(j);
}

/// The effective configuration, in the dimensionless form.
inline nlohmann::json spec_to_json(const SweepSpec& s) {
  nlohmann::json j;
  j["dimensionless"] = {{"a_sigma", s.base.a_sigma},
                        {"sigma_delta", s.base.sigma_delta},
                        {"aL", s.base.aL},
                        {"lambda", s.base.lambda}};
  if (s.acceleration) j["dimensionless"]["a"] = *s.acceleration;
  j["axis"] = to_string(s.axis);
  j["points"] = s.points;
  std::vector<std::string> m;
  if (s.measures.eof) m.push_back("eof");
  if (s.measures.coh_info) m.push_back("coh_info");
  if (s.measures.esq_id) m.push_back("esq_id");
  if (s.measures.esq_opt) m.push_back("esq_opt");
  if (s.measures.bmax) m.push_back("bmax");
  if (s.measures.negativity) m.push_back("negativity");
  j["measures"] = m;
  j["series"] = {{"max_terms", s.series.max_terms}, {"tail_tol", s.series.tail_tol}};
  j["quadrature"] = {{"abs_tol", s.quadrature.abs_tol},
                     {"rel_tol", s.quadrature.rel_tol},
                     {"domain_halfwidth", s.quadrature.domain_halfwidth},
                     {"max_subdivisions", s.quadrature.max_subdivisions}};
  j["optimizer"] = {{"restarts", s.optimizer.restarts},
                    {"max_iters", s.optimizer.max_iters},
                    {"seed", s.optimizer.seed},
                    {"x_tol", s.optimizer.x_tol},
                    {"f_tol", s.optimizer.f_tol},
                    {"initial_step", s.optimizer.initial_step},
                    {"workers", s.optimizer.workers}};
  j["workers"] = s.workers;
  j["threshold"] = to_string(s.threshold);
  return j;
}

}  // namespace udw
