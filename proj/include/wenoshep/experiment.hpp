#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wenoshep/kernels.hpp"
#include "wenoshep/point_set.hpp"
#include "wenoshep/smoothness.hpp"
#include "wenoshep/test_functions.hpp"
#include "wenoshep/weno_shepard.hpp"

namespace wenoshep {

enum class PointSource { Grid, Halton, Csv };
PointSource parse_point_source(std::string_view text);
std::string_view to_string(PointSource s);

/// Offset: (k + 1/2)/n per axis, never on grid nodes. Inclusive: k/(n - 1),
/// boundary included.
enum class EvalLayout { Offset, Inclusive };
EvalLayout parse_eval_layout(std::string_view text);
std::string_view to_string(EvalLayout l);

struct ExperimentConfig {
  std::vector<int> levels{4, 5, 6, 7};
  KernelFamily kernel = KernelFamily::WendlandC2;
  std::optional<double> eps_shape;  // unset: shape_parameter_for_level
  PointSource source = PointSource::Grid;
  std::string csv_path;
  TestField field;
  int eval_grid_n = 101;
  EvalLayout eval_layout = EvalLayout::Offset;
  double stencil_c = kDefaultStencilC;
  std::size_t stencil_min_size = 0;
  WenoConfig weno;
  std::vector<Mode> modes{Mode::Linear, Mode::Weno};
  int probe_resolution = kDefaultProbeResolution;
  bool allow_uncovered = false;
  double eps0 = 0.5;                  // Theorem-3 band: distance >= h (1 + eps0)
  double diffusion_threshold = 0.1;

  void validate() const;
};

/// Parses "4..7" or "4,5,7".
std::vector<int> parse_levels(std::string_view text);

// ---------------------------------------------------------------------------
// Metrics

struct ErrorMetrics {
  double mae = 0.0;
  double rmse = 0.0;
};

/// MAE = max e_i, RMSE = sqrt(mean e_i^2). Throws on an empty list.
ErrorMetrics error_metrics(std::span<const double> errors);

/// Errors at or below this are treated as exact reproduction.
inline constexpr double kExactErrorFloor = 1e-13;

struct Rate {
  enum class Kind { Undefined, Exact, Value };
  Kind kind = Kind::Undefined;
  double value = 0.0;

  static Rate undefined() { return {}; }
  static Rate exact() { return {Kind::Exact, 0.0}; }
  static Rate of(double v) { return {Kind::Value, v}; }
  bool has_value() const noexcept { return kind == Kind::Value; }
};

/// log(err_prev / err_curr) / log(h_prev / h_curr). Requires positive,
/// strictly decreasing h; returns Rate::exact() when either error is at or
/// below kExactErrorFloor.
Rate convergence_rate(double h_prev, double err_prev, double h_curr, double err_curr);

// ---------------------------------------------------------------------------
// Studies

struct ConvergenceRow {
  int level = 0;
  double h = 0.0;
  double mae = 0.0;
  double rmse = 0.0;
  Rate rate_inf;
  Rate rate_2;
  Mode method = Mode::Linear;
  std::size_t nodes = 0;
  std::size_t uncovered = 0;
  std::size_t enlarged_stencils = 0;
};

struct ConvergenceReport {
  ExperimentConfig config;
  std::vector<ConvergenceRow> rows;  // grouped by method, levels ascending

  std::vector<ConvergenceRow> rows_for(Mode m) const;
};

/// Evaluation points in row-major order (x fastest).
Points evaluation_grid(int n, EvalLayout layout);

/// Node set for level l of the configured source, sampled from cfg.field.
PointSet build_nodes(const ExperimentConfig& cfg, int level);

/// Kernel for level l (explicit eps_shape wins over the level rule).
WeightKernel kernel_for_level(const ExperimentConfig& cfg, int level);

/// Per level and mode: nodes, fill distance, both interpolants, errors on the
/// evaluation grid, MAE/RMSE and rates against the previous level.
/// Uncovered evaluation points raise UncoveredPointsError unless
/// cfg.allow_uncovered, in which case they are excluded and counted.
ConvergenceReport convergence_study(const ExperimentConfig& cfg);

struct ErrorField {
  Mode mode = Mode::Linear;
  int n = 0;
  double h = 0.0;
  std::vector<double> x, y, value, error, dist_gamma;  // NaN value when uncovered

  std::size_t size() const noexcept { return x.size(); }
};

struct DiscontinuitySummary {
  Mode mode = Mode::Linear;
  double max_error = 0.0;
  double max_error_far_band = 0.0;   // dist >= h (1 + eps0)
  double max_error_near = 0.0;       // dist <= stencil_c * h
  double diffusion_width = 0.0;      // in units of h
  std::size_t uncovered = 0;
};

struct DiscontinuityResult {
  int level = 0;
  double h = 0.0;
  double eps_shape = 0.0;
  PointSet nodes;
  IndicatorVector indicators;
  std::vector<ErrorField> fields;              // one per configured mode
  std::vector<DiscontinuitySummary> summaries; // aligned with fields

  const ErrorField& field(Mode m) const;
  const DiscontinuitySummary& summary(Mode m) const;
};

DiscontinuityResult discontinuity_experiment(const ExperimentConfig& cfg, int level);

/// Largest distance to Gamma among points with error > threshold, in units
/// of ef.h; 0 when no point exceeds the threshold.
double diffusion_width(const ErrorField& ef, double threshold);

// ---------------------------------------------------------------------------
// Reports

/// Header `l,h,MAE,rate_inf,RMSE,rate_2,method`.
std::string convergence_csv(const ConvergenceReport& report);
std::string convergence_json(const ConvergenceReport& report);
/// Header `x,y,value,error,dist_gamma`.
std::string error_field_csv(const ErrorField& ef);
std::string discontinuity_json(const DiscontinuityResult& result, const ExperimentConfig& cfg);
/// Header `i,x,y,I`.
std::string indicators_csv(const PointSet& ps, const IndicatorVector& ind);

enum class ReportFormat { Csv, Json };
void emit_report(const ConvergenceReport& report, ReportFormat format, const std::string& path);
void emit_report(const ErrorField& ef, const std::string& path);

std::string config_json(const ExperimentConfig& cfg);

}  // namespace wenoshep
