#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wenoshep/kernels.hpp"
#include "wenoshep/point_set.hpp"

namespace wenoshep {

/// Sparse normalized weights at one evaluation point.
///
/// `indices` are ascending node indices with omega_i(x) > 0; `weights` are
/// aligned with them and sum to one.
struct WeightVector {
  std::vector<double> point;
  std::vector<std::size_t> indices;
  std::vector<double> weights;

  std::size_t size() const noexcept { return indices.size(); }
  bool empty() const noexcept { return indices.empty(); }
  double sum() const noexcept;
};

/// W_i(x) = omega_i(x) / sum_j omega_j(x) over the nodes of `index` inside
/// the kernel support. Throws EmptySupportError when no node carries a
/// positive weight.
WeightVector shepard_weights(const PointSet& ps, const SpatialIndex& index,
                             const WeightKernel& kernel, std::span<const double> x);
WeightVector shepard_weights(const PointSet& ps, const WeightKernel& kernel,
                             std::span<const double> x);

/// sum_i w_i f_i, accumulated in ascending node order.
double apply_weights(const WeightVector& w, std::span<const double> values);

double eval_shepard(const PointSet& ps, const WeightKernel& kernel,
                    std::span<const double> x);

}  // namespace wenoshep
