#include "wenoshep/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <stdexcept>
#include <string>

#include "wenoshep/csv.hpp"
#include "wenoshep/errors.hpp"

namespace wenoshep {

using nlohmann::json;

PointSource parse_point_source(std::string_view text) {
  if (text == "grid") return PointSource::Grid;
  if (text == "halton") return PointSource::Halton;
  if (text == "csv") return PointSource::Csv;
  throw std::invalid_argument("unknown point source '" + std::string(text) +
                              "' (expected grid|halton|csv)");
}

std::string_view to_string(PointSource s) {
  switch (s) {
    case PointSource::Grid:
      return "grid";
    case PointSource::Halton:
      return "halton";
    case PointSource::Csv:
      return "csv";
  }
  return "?";
}

EvalLayout parse_eval_layout(std::string_view text) {
  if (text == "offset") return EvalLayout::Offset;
  if (text == "inclusive") return EvalLayout::Inclusive;
  throw std::invalid_argument("unknown eval layout '" + std::string(text) +
                              "' (expected offset|inclusive)");
}

std::string_view to_string(EvalLayout l) { return l == EvalLayout::Offset ? "offset" : "inclusive"; }

void ExperimentConfig::validate() const {
  if (levels.empty()) throw std::invalid_argument("config: no levels");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k] < 1) throw std::invalid_argument("config: levels must be >= 1");
    if (k > 0 && levels[k] <= levels[k - 1]) {
      throw std::invalid_argument("config: levels must be strictly ascending");
    }
  }
  if (eval_grid_n < 2) throw std::invalid_argument("config: eval_grid_n must be >= 2");
  if (!(stencil_c > 0.0)) throw std::invalid_argument("config: stencil_c must be positive");
  if (eps_shape && !(*eps_shape > 0.0)) {
    throw std::invalid_argument("config: eps_shape must be positive");
  }
  if (modes.empty()) throw std::invalid_argument("config: no modes");
  if (probe_resolution < 2) throw std::invalid_argument("config: probe_resolution must be >= 2");
  if (source == PointSource::Csv && csv_path.empty()) {
    throw std::invalid_argument("config: csv source needs a path");
  }
  if (!(diffusion_threshold > 0.0)) {
    throw std::invalid_argument("config: diffusion threshold must be positive");
  }
  weno.validate();
}

std::vector<int> parse_levels(std::string_view text) {
  auto to_int = [&](std::string_view s) {
    std::string str(s);
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(str, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (str.empty() || pos != str.size()) {
      throw std::invalid_argument("bad level list '" + std::string(text) + "'");
    }
    return v;
  };
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const int lo = to_int(text.substr(0, dots));
    const int hi = to_int(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("bad level range '" + std::string(text) + "'");
    for (int l = lo; l <= hi; ++l) out.push_back(l);
  } else {
    for (const auto part : csv::split(text)) out.push_back(to_int(part));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Metrics

ErrorMetrics error_metrics(std::span<const double> errors) {
  if (errors.empty()) throw std::invalid_argument("error_metrics: empty error list");
  ErrorMetrics m;
  double sq = 0.0;
  for (const double e : errors) {
    m.mae = std::max(m.mae, e);
    sq += e * e;
  }
  m.rmse = std::sqrt(sq / static_cast<double>(errors.size()));
  return m;
}

Rate convergence_rate(double h_prev, double err_prev, double h_curr, double err_curr) {
  if (!(h_prev > 0.0) || !(h_curr > 0.0) || !(h_curr < h_prev)) {
    throw std::invalid_argument("convergence_rate: h must be positive and strictly decreasing");
  }
  if (!(err_prev > kExactErrorFloor) || !(err_curr > kExactErrorFloor)) return Rate::exact();
  return Rate::of(std::log(err_prev / err_curr) / std::log(h_prev / h_curr));
}

// ---------------------------------------------------------------------------
// Studies

std::vector<ConvergenceRow> ConvergenceReport::rows_for(Mode m) const {
  std::vector<ConvergenceRow> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
               [m](const ConvergenceRow& r) { return r.method == m; });
  return out;
}

Points evaluation_grid(int n, EvalLayout layout) {
  if (n < 2) throw std::invalid_argument("evaluation_grid: n must be >= 2");
  Points pts(2);
  pts.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  auto coord = [&](int k) {
    return layout == EvalLayout::Offset ? (k + 0.5) / n : static_cast<double>(k) / (n - 1);
  };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double p[2] = {coord(i), coord(j)};
      pts.push_back(p);
    }
  }
  return pts;
}

PointSet build_nodes(const ExperimentConfig& cfg, int level) {
  const Field field = cfg.field.as_field();
  switch (cfg.source) {
    case PointSource::Grid:
      return regular_grid(level, field);
    case PointSource::Halton: {
      const std::size_t m = (std::size_t{1} << level) + 1;
      return halton_points(m * m, field);
    }
    case PointSource::Csv: {
      PointSet ps = read_point_set_csv(cfg.csv_path);
      return ps;
    }
  }
  throw std::logic_error("build_nodes: unknown source");
}

WeightKernel kernel_for_level(const ExperimentConfig& cfg, int level) {
  const double eps = cfg.eps_shape ? *cfg.eps_shape : shape_parameter_for_level(level);
  return WeightKernel::wendland(cfg.kernel, eps);
}

namespace {

struct LevelRun {
  PointSet nodes;
  double h;
  Interpolant interp;
};

LevelRun run_level(const ExperimentConfig& cfg, int level) {
  PointSet nodes = build_nodes(cfg, level);
  const double h = fill_distance(nodes, cfg.probe_resolution).h;
  Interpolant interp = Interpolant::build(nodes, kernel_for_level(cfg, level),
                                          RadiusRule{cfg.stencil_c, h, cfg.stencil_min_size},
                                          cfg.weno, Mode::Weno);
  return {std::move(nodes), h, std::move(interp)};
}

std::vector<double> reference_values(const ExperimentConfig& cfg, const Points& z) {
  std::vector<double> ref(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) ref[k] = cfg.field(z[k][0], z[k][1]);
  return ref;
}

std::vector<double> evaluate_checked(const ExperimentConfig& cfg, const Interpolant& interp,
                                     const Points& z, std::vector<std::size_t>& uncovered) {
  auto values = interp.eval_batch(z, uncovered);
  if (!uncovered.empty() && !cfg.allow_uncovered) {
    std::vector<std::vector<double>> pts;
    for (const auto k : uncovered) pts.emplace_back(z[k].begin(), z[k].end());
    throw UncoveredPointsError(uncovered, std::move(pts));
  }
  return values;
}

}  // namespace

ConvergenceReport convergence_study(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.source == PointSource::Csv) {
    throw std::invalid_argument("convergence_study: csv point source has no levels");
  }
  const Points z = evaluation_grid(cfg.eval_grid_n, cfg.eval_layout);
  const std::vector<double> ref = reference_values(cfg, z);

  // rows[mode][level]
  std::vector<std::vector<ConvergenceRow>> per_mode(cfg.modes.size());
  for (const int level : cfg.levels) {
    const LevelRun run = run_level(cfg, level);
    for (std::size_t m = 0; m < cfg.modes.size(); ++m) {
      std::vector<std::size_t> uncovered;
      const auto values = evaluate_checked(cfg, run.interp.with_mode(cfg.modes[m]), z, uncovered);
      std::vector<double> errors;
      errors.reserve(z.size());
      for (std::size_t k = 0; k < z.size(); ++k) {
        if (!std::isnan(values[k])) errors.push_back(std::abs(ref[k] - values[k]));
      }
      const ErrorMetrics em = error_metrics(errors);
      ConvergenceRow row;
      row.level = level;
      row.h = run.h;
      row.mae = em.mae;
      row.rmse = em.rmse;
      row.method = cfg.modes[m];
      row.nodes = run.nodes.size();
      row.uncovered = uncovered.size();
      row.enlarged_stencils = run.interp.indicators().enlarged_count();
      if (!per_mode[m].empty()) {
        const auto& prev = per_mode[m].back();
        row.rate_inf = convergence_rate(prev.h, prev.mae, row.h, row.mae);
        row.rate_2 = convergence_rate(prev.h, prev.rmse, row.h, row.rmse);
      }
      per_mode[m].push_back(row);
    }
  }
  ConvergenceReport report;
  report.config = cfg;
  for (auto& rows : per_mode) report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  return report;
}

const ErrorField& DiscontinuityResult::field(Mode m) const {
  for (const auto& f : fields) {
    if (f.mode == m) return f;
  }
  throw std::out_of_range("DiscontinuityResult: mode not run");
}

const DiscontinuitySummary& DiscontinuityResult::summary(Mode m) const {
  for (const auto& s : summaries) {
    if (s.mode == m) return s;
  }
  throw std::out_of_range("DiscontinuityResult: mode not run");
}

double diffusion_width(const ErrorField& ef, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("diffusion_width: threshold must be positive");
  if (!(ef.h > 0.0)) throw std::invalid_argument("diffusion_width: error field without h");
  double width = 0.0;
  for (std::size_t k = 0; k < ef.size(); ++k) {
    if (ef.error[k] > threshold) width = std::max(width, ef.dist_gamma[k]);
  }
  return width / ef.h;
}

DiscontinuityResult discontinuity_experiment(const ExperimentConfig& cfg, int level) {
  cfg.validate();
  const Geometry geom = cfg.field.geometry;
  LevelRun run = run_level(cfg, level);
  const Points z = evaluation_grid(cfg.eval_grid_n, cfg.eval_layout);
  const std::vector<double> ref = reference_values(cfg, z);

  DiscontinuityResult result{level,
                             run.h,
                             run.interp.kernel().eps_shape(),
                             run.nodes,
                             run.interp.indicators(),
                             {},
                             {}};
  for (const Mode mode : cfg.modes) {
    std::vector<std::size_t> uncovered;
    const auto values = evaluate_checked(cfg, run.interp.with_mode(mode), z, uncovered);
    ErrorField ef;
    ef.mode = mode;
    ef.n = cfg.eval_grid_n;
    ef.h = run.h;
    DiscontinuitySummary s;
    s.mode = mode;
    s.uncovered = uncovered.size();
    for (std::size_t k = 0; k < z.size(); ++k) {
      const double x = z[k][0];
      const double y = z[k][1];
      const double d = distance_to_gamma(geom, x, y);
      const double err = std::isnan(values[k]) ? 0.0 : std::abs(ref[k] - values[k]);
      ef.x.push_back(x);
      ef.y.push_back(y);
      ef.value.push_back(values[k]);
      ef.error.push_back(err);
      ef.dist_gamma.push_back(d);
      s.max_error = std::max(s.max_error, err);
      if (d >= run.h * (1.0 + cfg.eps0)) s.max_error_far_band = std::max(s.max_error_far_band, err);
      if (d <= cfg.stencil_c * run.h) s.max_error_near = std::max(s.max_error_near, err);
    }
    s.diffusion_width = diffusion_width(ef, cfg.diffusion_threshold);
    result.fields.push_back(std::move(ef));
    result.summaries.push_back(s);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string rate_text(const Rate& r) {
  switch (r.kind) {
    case Rate::Kind::Undefined:
      return "";
    case Rate::Kind::Exact:
      return "exact";
    case Rate::Kind::Value:
      return csv::format_double(r.value);
  }
  return "";
}

json rate_json(const Rate& r) {
  switch (r.kind) {
    case Rate::Kind::Undefined:
      return nullptr;
    case Rate::Kind::Exact:
      return "exact";
    case Rate::Kind::Value:
      return r.value;
  }
  return nullptr;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["levels"] = cfg.levels;
  j["kernel"] = std::string(to_string(cfg.kernel));
  if (cfg.eps_shape) {
    j["eps_shape"] = *cfg.eps_shape;
  } else {
    j["eps_rule"] = "paper-level";
  }
  j["points"] = std::string(to_string(cfg.source));
  if (cfg.source == PointSource::Csv) j["csv_path"] = cfg.csv_path;
  j["field"] = std::string(to_string(cfg.field.kind));
  j["gamma"] = std::string(to_string(cfg.field.geometry));
  if (cfg.field.kind == FieldKind::Constant) j["constant"] = cfg.field.constant;
  j["eval_grid_n"] = cfg.eval_grid_n;
  j["eval_layout"] = std::string(to_string(cfg.eval_layout));
  j["stencil_c"] = cfg.stencil_c;
  j["stencil_min_size"] = cfg.stencil_min_size;
  j["weno_epsilon"] = cfg.weno.epsilon;
  j["weno_t"] = cfg.weno.t;
  json modes = json::array();
  for (const Mode m : cfg.modes) modes.push_back(std::string(to_string(m)));
  j["modes"] = modes;
  j["probe_resolution"] = cfg.probe_resolution;
  j["allow_uncovered"] = cfg.allow_uncovered;
  j["eps0"] = cfg.eps0;
  j["diffusion_threshold"] = cfg.diffusion_threshold;
  return j;
}

}  // namespace

std::string config_json(const ExperimentConfig& cfg) { return config_to_json(cfg).dump(2) + "\n"; }

std::string convergence_csv(const ConvergenceReport& report) {
  std::string out = "l,h,MAE,rate_inf,RMSE,rate_2,method\n";
  for (const auto& r : report.rows) {
    out += std::to_string(r.level) + ',' + csv::format_double(r.h) + ',' +
           csv::format_double(r.mae) + ',' + rate_text(r.rate_inf) + ',' +
           csv::format_double(r.rmse) + ',' + rate_text(r.rate_2) + ',' +
           std::string(to_string(r.method)) + '\n';
  }
  return out;
}

std::string convergence_json(const ConvergenceReport& report) {
  json j;
  j["config"] = config_to_json(report.config);
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"l", r.level},
                    {"h", r.h},
                    {"MAE", r.mae},
                    {"rate_inf", rate_json(r.rate_inf)},
                    {"RMSE", r.rmse},
                    {"rate_2", rate_json(r.rate_2)},
                    {"method", std::string(to_string(r.method))},
                    {"nodes", r.nodes},
                    {"uncovered", r.uncovered},
                    {"enlarged_stencils", r.enlarged_stencils}});
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string error_field_csv(const ErrorField& ef) {
  std::string out = "x,y,value,error,dist_gamma\n";
  for (std::size_t k = 0; k < ef.size(); ++k) {
    out += csv::format_double(ef.x[k]) + ',' + csv::format_double(ef.y[k]) + ',' +
           csv::format_double(ef.value[k]) + ',' + csv::format_double(ef.error[k]) + ',' +
           csv::format_double(ef.dist_gamma[k]) + '\n';
  }
  return out;
}

std::string discontinuity_json(const DiscontinuityResult& result, const ExperimentConfig& cfg) {
  json j;
  j["config"] = config_to_json(cfg);
  j["level"] = result.level;
  j["h"] = result.h;
  j["eps_shape"] = result.eps_shape;
  j["nodes"] = result.nodes.size();
  j["enlarged_stencils"] = result.indicators.enlarged_count();
  json modes = json::array();
  for (const auto& s : result.summaries) {
    modes.push_back({{"mode", std::string(to_string(s.mode))},
                     {"max_error", s.max_error},
                     {"max_error_far_band", s.max_error_far_band},
                     {"max_error_near", s.max_error_near},
                     {"diffusion_width_h", s.diffusion_width},
                     {"uncovered", s.uncovered}});
  }
  j["summaries"] = modes;
  return j.dump(2) + "\n";
}

std::string indicators_csv(const PointSet& ps, const IndicatorVector& ind) {
  if (ps.dim() != 2) throw std::invalid_argument("indicators_csv: only 2-D sets");
  std::string out = "i,x,y,I\n";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    out += std::to_string(i) + ',' + csv::format_double(ps.node(i)[0]) + ',' +
           csv::format_double(ps.node(i)[1]) + ',' + csv::format_double(ind[i]) + '\n';
  }
  return out;
}

void emit_report(const ConvergenceReport& report, ReportFormat format, const std::string& path) {
  csv::write_file(path, format == ReportFormat::Csv ? convergence_csv(report)
                                                    : convergence_json(report));
}

void emit_report(const ErrorField& ef, const std::string& path) {
  csv::write_file(path, error_field_csv(ef));
}

}  // namespace wenoshep
