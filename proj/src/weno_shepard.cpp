#include "wenoshep/weno_shepard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "wenoshep/errors.hpp"

namespace wenoshep {
namespace {

double int_pow(double base, int e) {
  double r = 1.0;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

constexpr std::size_t kParallelThreshold = 2048;

}  // namespace

void WenoConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("WenoConfig: epsilon must be positive");
  if (t < 1) throw std::invalid_argument("WenoConfig: t must be >= 1");
}

Mode parse_mode(std::string_view text) {
  if (text == "linear") return Mode::Linear;
  if (text == "weno") return Mode::Weno;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "' (expected linear|weno)");
}

std::string_view to_string(Mode mode) { return mode == Mode::Linear ? "linear" : "weno"; }

WeightVector nonlinear_weights(const WeightVector& w, std::span<const double> indicators,
                               const WenoConfig& cfg) {
  if (w.empty()) throw EmptySupportError(w.point);
  WeightVector out;
  out.point = w.point;
  out.indices = w.indices;
  out.weights.resize(w.size());
  double total = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double a = w.weights[k] / int_pow(cfg.epsilon + indicators[w.indices[k]], cfg.t);
    out.weights[k] = a;
    total += a;
  }
  for (double& a : out.weights) a /= total;
  return out;
}

Interpolant::Interpolant(PointSet points, WeightKernel kernel, IndicatorVector indicators,
                         WenoConfig weno, Mode mode)
    : mode_(mode) {
  weno.validate();
  if (indicators.size() != points.size()) {
    throw std::invalid_argument("Interpolant: indicators not aligned with nodes");
  }
  for (const double v : indicators.values) {
    if (!(v >= 0.0)) throw std::invalid_argument("Interpolant: indicators must be >= 0");
  }
  SpatialIndex index(points.shared_nodes(), kernel.support_radius());
  state_ = std::make_shared<const State>(State{std::move(points), std::move(kernel),
                                               std::move(indicators), weno, std::move(index)});
}

Interpolant Interpolant::build(PointSet points, WeightKernel kernel, RadiusRule rule,
                               WenoConfig weno, Mode mode) {
  if (!(rule.h > 0.0)) rule.h = fill_distance(points).h;
  IndicatorVector ind = all_indicators(points, rule);
  return Interpolant(std::move(points), std::move(kernel), std::move(ind), weno, mode);
}

Interpolant Interpolant::with_mode(Mode mode) const { return Interpolant(state_, mode); }

WeightVector Interpolant::shepard_weights(std::span<const double> x) const {
  return wenoshep::shepard_weights(state_->points, state_->index, state_->kernel, x);
}

WeightVector Interpolant::weights(std::span<const double> x) const {
  WeightVector w = shepard_weights(x);
  if (mode_ == Mode::Linear) return w;
  return nonlinear_weights(w, state_->indicators.values, state_->weno);
}

double Interpolant::eval(std::span<const double> x) const {
  return apply_weights(weights(x), state_->points.values());
}

std::vector<double> Interpolant::eval_batch(const Points& xs,
                                            std::vector<std::size_t>& uncovered) const {
  if (!xs.empty() && xs.dim() != state_->points.dim()) {
    throw std::invalid_argument("eval_batch: dimension mismatch");
  }
  const std::size_t n = xs.size();
  std::vector<double> out(n);
  std::vector<char> missing(n, 0);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      try {
        out[k] = eval(xs[k]);
      } catch (const EmptySupportError&) {
        out[k] = std::numeric_limits<double>::quiet_NaN();
        missing[k] = 1;
      }
    }
  };

  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t nthreads = n < kParallelThreshold ? 1 : std::min<std::size_t>(hw, 16);
  if (nthreads == 1) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + nthreads - 1) / nthreads;
    for (std::size_t b = 0; b < n; b += chunk) pool.emplace_back(work, b, std::min(n, b + chunk));
  }

  uncovered.clear();
  for (std::size_t k = 0; k < n; ++k) {
    if (missing[k]) uncovered.push_back(k);
  }
  return out;
}

std::vector<double> Interpolant::eval_batch(const Points& xs) const {
  std::vector<std::size_t> uncovered;
  auto out = eval_batch(xs, uncovered);
  if (!uncovered.empty()) {
    std::vector<std::vector<double>> pts;
    for (const auto k : uncovered) pts.emplace_back(xs[k].begin(), xs[k].end());
    throw UncoveredPointsError(std::move(uncovered), std::move(pts));
  }
  return out;
}

}  // namespace wenoshep
