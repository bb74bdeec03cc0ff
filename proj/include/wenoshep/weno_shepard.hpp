#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "wenoshep/kernels.hpp"
#include "wenoshep/point_set.hpp"
#include "wenoshep/shepard.hpp"
#include "wenoshep/smoothness.hpp"

namespace wenoshep {

/// alpha_i = W_i / (epsilon + I_i)^t.
///
/// With the defaults alpha_i <= W_i * 1e56, so no overflow guard is needed.
/// Very small epsilon combined with large t can underflow the denominator.
struct WenoConfig {
  double epsilon = 1e-14;
  int t = 4;

  void validate() const;
};

enum class Mode { Linear, Weno };

Mode parse_mode(std::string_view text);
std::string_view to_string(Mode mode);

/// Reweights `w` by the indicators of its support nodes and renormalizes.
WeightVector nonlinear_weights(const WeightVector& w, std::span<const double> indicators,
                               const WenoConfig& cfg);

/// Immutable bundle of data, kernel, indicators and mode.
///
/// Copies share the underlying state. The interpolant keeps its own bucket
/// index with cells the size of the kernel support.
class Interpolant {
 public:
  Interpolant(PointSet points, WeightKernel kernel, IndicatorVector indicators,
              WenoConfig weno = {}, Mode mode = Mode::Weno);

  /// Computes indicators with `rule` (h from fill_distance when rule.h <= 0).
  static Interpolant build(PointSet points, WeightKernel kernel, RadiusRule rule,
                           WenoConfig weno = {}, Mode mode = Mode::Weno);

  /// Same state, other mode.
  Interpolant with_mode(Mode mode) const;

  /// Weights used by eval at x: W in Linear mode, the nonlinear weights in
  /// Weno mode.
  WeightVector weights(std::span<const double> x) const;
  WeightVector shepard_weights(std::span<const double> x) const;

  double eval(std::span<const double> x) const;

  /// Element-wise eval in input order. Uncovered points raise
  /// UncoveredPointsError listing all of them.
  std::vector<double> eval_batch(const Points& xs) const;

  /// As eval_batch, but uncovered points are reported in `uncovered` and get
  /// NaN instead of raising.
  std::vector<double> eval_batch(const Points& xs,
                                 std::vector<std::size_t>& uncovered) const;

  const PointSet& point_set() const noexcept { return state_->points; }
  const WeightKernel& kernel() const noexcept { return state_->kernel; }
  const IndicatorVector& indicators() const noexcept { return state_->indicators; }
  const WenoConfig& weno() const noexcept { return state_->weno; }
  Mode mode() const noexcept { return mode_; }

 private:
  struct State {
    PointSet points;
    WeightKernel kernel;
    IndicatorVector indicators;
    WenoConfig weno;
    SpatialIndex index;
  };

  Interpolant(std::shared_ptr<const State> state, Mode mode)
      : state_(std::move(state)), mode_(mode) {}

  std::shared_ptr<const State> state_;
  Mode mode_;
};

}  // namespace wenoshep
