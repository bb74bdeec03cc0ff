#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wenoshep/point_set.hpp"

namespace wenoshep {

inline constexpr double kDefaultStencilC = 3.5;

/// Stencil radius delta_i = c * h, with a minimum member count.
///
/// `min_size == 0` means the default 2 * (dim + 1). The count actually
/// enforced is min(min_size, N); sets with fewer than dim + 1 nodes cannot
/// be fitted and are rejected.
struct RadiusRule {
  double c = kDefaultStencilC;
  double h = 0.0;
  std::size_t min_size = 0;

  std::size_t effective_min_size(std::size_t dim, std::size_t n) const noexcept;
};

/// Ball stencil around node `center`: all nodes strictly closer than `radius`.
struct Stencil {
  std::size_t center = 0;
  std::vector<std::size_t> members;  // ascending
  double radius = 0.0;
  int enlargements = 0;  // times the radius was scaled by 1.5
};

/// Best affine fit p(x) = coeffs[0] + sum_k coeffs[k+1] x_k in the least
/// squares sense.
struct LinearFit {
  std::vector<double> coeffs;
  double residual_mean_abs = 0.0;
  bool rank_deficient = false;  // constant fallback was used

  double operator()(std::span<const double> x) const noexcept;
};

/// Per-node smoothness indicators, aligned with the nodes of a PointSet.
struct IndicatorVector {
  std::vector<double> values;
  RadiusRule rule;
  std::vector<std::size_t> stencil_sizes;
  std::vector<int> enlargements;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const noexcept { return values[i]; }
  /// Nodes whose stencil radius had to grow.
  std::size_t enlarged_count() const noexcept;
};

Stencil build_stencil(const PointSet& ps, std::size_t i, double c, double h,
                      std::size_t min_size = 0);

/// Least-squares affine fit. Coordinates are shifted to `center` (default:
/// centroid) and scaled before a column-pivoted QR solve; if the points do
/// not span dim + 1 affine directions the constant fit mean(values) is used.
LinearFit linear_lsq_fit(const Points& points, std::span<const double> values,
                         std::optional<std::vector<double>> center = std::nullopt);

/// Mean absolute residual of the affine fit over node i's stencil.
double smoothness_indicator(const PointSet& ps, std::size_t i, const RadiusRule& rule);

IndicatorVector all_indicators(const PointSet& ps, const RadiusRule& rule);

/// Rule with h taken from fill_distance(ps).
RadiusRule radius_rule_for(const PointSet& ps, double c = kDefaultStencilC,
                           std::size_t min_size = 0,
                           int probe_resolution = kDefaultProbeResolution);

}  // namespace wenoshep
