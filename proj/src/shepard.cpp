#include "wenoshep/shepard.hpp"

#include <stdexcept>

#include "wenoshep/errors.hpp"

namespace wenoshep {

double WeightVector::sum() const noexcept {
  double s = 0.0;
  for (const double w : weights) s += w;
  return s;
}

WeightVector shepard_weights(const PointSet& ps, const SpatialIndex& index,
                             const WeightKernel& kernel, std::span<const double> x) {
  if (x.size() != ps.dim()) throw std::invalid_argument("shepard_weights: dimension mismatch");
  WeightVector out;
  out.point.assign(x.begin(), x.end());
  std::vector<std::size_t> candidates;
  index.within(x, kernel.support_radius(), candidates);

  out.indices.reserve(candidates.size());
  out.weights.reserve(candidates.size());
  double total = 0.0;
  for (const auto i : candidates) {
    const double w = kernel(euclidean_distance(ps.node(i), x));
    if (w > 0.0) {
      out.indices.push_back(i);
      out.weights.push_back(w);
      total += w;
    }
  }
  if (out.indices.empty()) throw EmptySupportError(out.point);
  for (double& w : out.weights) w /= total;
  return out;
}

WeightVector shepard_weights(const PointSet& ps, const WeightKernel& kernel,
                             std::span<const double> x) {
  return shepard_weights(ps, ps.index(), kernel, x);
}

double apply_weights(const WeightVector& w, std::span<const double> values) {
  double s = 0.0;
  for (std::size_t k = 0; k < w.indices.size(); ++k) s += w.weights[k] * values[w.indices[k]];
  return s;
}

double eval_shepard(const PointSet& ps, const WeightKernel& kernel,
                    std::span<const double> x) {
  return apply_weights(shepard_weights(ps, kernel, x), ps.values());
}

}  // namespace wenoshep
