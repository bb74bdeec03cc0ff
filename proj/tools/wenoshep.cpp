// wenoshep: command line front end for the Shepard / WENO-Shepard toolkit.
//
//   wenoshep converge --kernel w2 --points grid --levels 4..7 --out DIR
//   wenoshep discont --gamma line --points grid --level 6 --mode both --out DIR
//   wenoshep eval --data points.csv --query queries.csv --mode weno --out results.csv
//
// Exit codes: 0 success, 2 uncovered evaluation point, 3 malformed input,
// 1 anything else (I/O).

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "wenoshep/csv.hpp"
#include "wenoshep/errors.hpp"
#include "wenoshep/experiment.hpp"

namespace fs = std::filesystem;
using namespace wenoshep;

namespace {

constexpr int kExitUncovered = 2;
constexpr int kExitMalformed = 3;

struct Options {
  std::string kernel = "w2";
  std::optional<double> eps_shape;
  std::string eps_rule = "paper-level";
  std::string points = "grid";
  std::string field;
  double constant_value = 7.0;
  std::string gamma = "line";
  std::string levels = "4..7";
  std::optional<int> level;
  std::string mode;
  int eval_grid_n = 101;
  std::string eval_layout = "offset";
  double stencil_c = kDefaultStencilC;
  std::size_t stencil_min_size = 0;
  double weno_epsilon = 1e-14;
  int weno_t = 4;
  int probe_resolution = kDefaultProbeResolution;
  bool allow_uncovered = false;
  double eps0 = 0.5;
  double threshold = 0.1;
  std::string out;
  std::string data;
  std::string query;
  bool dump_indicators = false;
};

std::vector<Mode> modes_from(const std::string& text) {
  if (text == "both") return {Mode::Linear, Mode::Weno};
  return {parse_mode(text)};
}

ExperimentConfig to_config(const Options& o, const std::string& default_field,
                           const std::string& default_mode) {
  ExperimentConfig cfg;
  cfg.levels = parse_levels(o.levels);
  cfg.kernel = parse_kernel_family(o.kernel);
  if (o.eps_shape) {
    cfg.eps_shape = o.eps_shape;
  } else if (o.eps_rule != "paper-level") {
    throw std::invalid_argument("unknown eps_rule '" + o.eps_rule + "' (expected paper-level)");
  }
  cfg.source = parse_point_source(o.points);
  cfg.csv_path = o.data;
  cfg.field.kind = parse_field_kind(o.field.empty() ? default_field : o.field);
  cfg.field.geometry = parse_geometry(o.gamma);
  cfg.field.constant = o.constant_value;
  cfg.eval_grid_n = o.eval_grid_n;
  cfg.eval_layout = parse_eval_layout(o.eval_layout);
  cfg.stencil_c = o.stencil_c;
  cfg.stencil_min_size = o.stencil_min_size;
  cfg.weno.epsilon = o.weno_epsilon;
  cfg.weno.t = o.weno_t;
  cfg.modes = modes_from(o.mode.empty() ? default_mode : o.mode);
  cfg.probe_resolution = o.probe_resolution;
  cfg.allow_uncovered = o.allow_uncovered;
  cfg.eps0 = o.eps0;
  cfg.diffusion_threshold = o.threshold;
  cfg.validate();
  return cfg;
}

fs::path require_out_dir(const Options& o) {
  if (o.out.empty()) throw std::invalid_argument("--out DIR is required");
  fs::path dir(o.out);
  fs::create_directories(dir);
  return dir;
}

int run_converge(const Options& o) {
  ExperimentConfig cfg = to_config(o, "franke", "both");
  const fs::path dir = require_out_dir(o);
  const ConvergenceReport report = convergence_study(cfg);
  emit_report(report, ReportFormat::Csv, (dir / "convergence.csv").string());
  emit_report(report, ReportFormat::Json, (dir / "convergence.json").string());
  std::cout << convergence_csv(report);
  return 0;
}

int run_discont(const Options& o) {
  ExperimentConfig cfg = to_config(o, "piecewise", "both");
  const int level = o.level.value_or(cfg.levels.back());
  cfg.levels = {level};
  const fs::path dir = require_out_dir(o);
  const DiscontinuityResult result = discontinuity_experiment(cfg, level);
  for (const auto& ef : result.fields) {
    emit_report(ef, (dir / ("discont_" + std::string(to_string(ef.mode)) + ".csv")).string());
  }
  const std::string summary = discontinuity_json(result, cfg);
  csv::write_file((dir / "discont_summary.json").string(), summary);
  if (o.dump_indicators) {
    csv::write_file((dir / "indicators.csv").string(),
                    indicators_csv(result.nodes, result.indicators));
  }
  std::cout << summary;
  return 0;
}

int run_eval(const Options& o) {
  if (o.data.empty() || o.query.empty() || o.out.empty()) {
    throw std::invalid_argument("eval needs --data, --query and --out");
  }
  const PointSet ps = read_point_set_csv(o.data);
  const Points queries = read_query_csv(o.query);
  const double h = fill_distance(ps, o.probe_resolution).h;

  // Without an explicit shape or level the support radius is 4h, which is
  // what the level rule gives on regular grids.
  double eps = 0.0;
  if (o.eps_shape) {
    eps = *o.eps_shape;
  } else if (o.level) {
    eps = shape_parameter_for_level(*o.level);
  } else {
    eps = 1.0 / (4.0 * h);
  }
  WenoConfig weno{o.weno_epsilon, o.weno_t};
  const Interpolant interp =
      Interpolant::build(ps, WeightKernel::wendland(parse_kernel_family(o.kernel), eps),
                         RadiusRule{o.stencil_c, h, o.stencil_min_size}, weno,
                         parse_mode(o.mode.empty() ? "weno" : o.mode));

  std::vector<std::size_t> uncovered;
  const auto values = interp.eval_batch(queries, uncovered);
  if (!uncovered.empty() && !o.allow_uncovered) {
    std::vector<std::vector<double>> pts;
    for (const auto k : uncovered) pts.emplace_back(queries[k].begin(), queries[k].end());
    throw UncoveredPointsError(uncovered, std::move(pts));
  }
  std::string out = "x,y,value\n";
  for (std::size_t k = 0; k < queries.size(); ++k) {
    out += csv::format_double(queries[k][0]) + ',' + csv::format_double(queries[k][1]) + ',' +
           csv::format_double(values[k]) + '\n';
  }
  csv::write_file(o.out, out);
  return 0;
}

void add_shared_options(CLI::App& app, Options& o) {
  app.add_option("--kernel", o.kernel, "Weight kernel: w2 | w4")
      ->check(CLI::IsMember({"w2", "w4"}));
  app.add_option("--eps-shape,--eps_shape", o.eps_shape, "Explicit kernel shape parameter");
  app.add_option("--eps-rule,--eps_rule", o.eps_rule, "Shape rule when no explicit value: paper-level");
  app.add_option("--points", o.points, "Node source: grid | halton | csv");
  app.add_option("--field", o.field, "Test field: franke | piecewise | constant");
  app.add_option("--constant-value,--constant_value", o.constant_value, "Value of the constant field");
  app.add_option("--gamma", o.gamma, "Discontinuity curve: line | circle | square");
  app.add_option("--levels", o.levels, "Levels, e.g. 4..7 or 4,5,6");
  app.add_option("--level", o.level, "Single level");
  app.add_option("--mode", o.mode, "linear | weno | both");
  app.add_option("--eval-grid-n,--eval_grid_n", o.eval_grid_n, "Evaluation points per axis");
  app.add_option("--eval-layout,--eval_layout", o.eval_layout, "offset | inclusive");
  app.add_option("--stencil-c,--stencil_c", o.stencil_c, "Stencil radius multiplier c (delta = c h)");
  app.add_option("--stencil-min-size,--stencil_min_size", o.stencil_min_size,
                 "Minimum stencil members (0: 2(dim+1))");
  app.add_option("--weno-epsilon,--weno_epsilon", o.weno_epsilon, "Indicator regularizer");
  app.add_option("--weno-t,--weno_t", o.weno_t, "Indicator exponent");
  app.add_option("--probe-resolution,--probe_resolution", o.probe_resolution,
                 "Probe grid per axis for the fill distance");
  app.add_flag("--allow-uncovered,--allow_uncovered", o.allow_uncovered,
               "Exclude uncovered evaluation points instead of aborting");
  app.add_option("--eps0", o.eps0, "Band offset: far band is distance >= h (1 + eps0)");
  app.add_option("--threshold", o.threshold, "Error threshold for the diffusion width");
  app.add_option("--data", o.data, "Node CSV with header x,y,f (eval, or --points csv)");
  app.add_option("--out", o.out, "Output directory (eval: output file)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shepard and WENO-Shepard scattered-data interpolation"};
  app.set_config("--config", "", "key = value configuration file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  add_shared_options(app, o);

  auto* converge = app.add_subcommand("converge", "Convergence study on a smooth field");
  auto* discont = app.add_subcommand("discont", "Reconstruction of a piecewise smooth field");
  auto* eval = app.add_subcommand("eval", "Interpolate CSV data at CSV query points");
  discont->add_flag("--dump-indicators", o.dump_indicators, "Also write indicators.csv");
  eval->add_option("--query", o.query, "Query CSV with header x,y");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitMalformed;
  }

  try {
    if (converge->parsed()) return run_converge(o);
    if (discont->parsed()) return run_discont(o);
    if (eval->parsed()) return run_eval(o);
  } catch (const UncoveredPointsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUncovered;
  } catch (const EmptySupportError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUncovered;
  } catch (const MalformedInputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
