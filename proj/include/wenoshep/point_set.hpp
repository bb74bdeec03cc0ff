#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace wenoshep {

/// Scalar field sampled at generated nodes; receives one point of length dim.
using Field = std::function<double(std::span<const double>)>;

/// Flat storage for a list of points in R^dim.
class Points {
 public:
  Points() = default;
  explicit Points(std::size_t dim) : dim_(dim) {}
  Points(std::size_t dim, std::vector<double> coords);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ ? coords_.size() / dim_ : 0; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }
  void push_back(std::span<const double> p);
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }

  const std::vector<double>& coords() const noexcept { return coords_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

inline double euclidean_distance(std::span<const double> a,
                                 std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

/// Axis-aligned box [lower, upper] declaring the domain of a node set.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  static Box unit(std::size_t dim);
  static Box bounding(const Points& pts);
  bool contains(std::span<const double> p) const noexcept;
  double diameter() const noexcept;
};

/// Uniform bucket grid for fixed-radius queries.
///
/// Nodes are binned into cubic cells of side `cell_size` over the bounding box
/// of the nodes. Within a cell, node indices are stored in ascending order.
/// The coordinates are shared, not copied.
class SpatialIndex {
 public:
  SpatialIndex() = default;
  SpatialIndex(std::shared_ptr<const Points> nodes, double cell_size);

  /// Indices i with ||x_i - center|| < radius, ascending.
  std::vector<std::size_t> within(std::span<const double> center,
                                  double radius) const;
  void within(std::span<const double> center, double radius,
              std::vector<std::size_t>& out) const;

  /// Index of the node closest to `center` (smallest index on ties).
  std::size_t nearest(std::span<const double> center) const;

  double cell_size() const noexcept { return cell_size_; }

 private:
  std::shared_ptr<const Points> nodes_;
  double cell_size_ = 1.0;
  std::vector<double> origin_;
  std::vector<std::size_t> cells_per_axis_;
  std::vector<std::size_t> cell_start_;  // CSR offsets, size = cells + 1
  std::vector<std::size_t> items_;

  std::size_t axis_cell(std::size_t axis, double coord) const noexcept;
};

/// Nodes, sampled values, declared domain and a neighbor index.
///
/// Immutable after construction. Nodes must be pairwise distinct and
/// `values.size() == nodes.size()`.
class PointSet {
 public:
  PointSet(Points nodes, std::vector<double> values);
  PointSet(Points nodes, std::vector<double> values, Box box);

  std::size_t dim() const noexcept { return nodes_->dim(); }
  std::size_t size() const noexcept { return nodes_->size(); }
  const Points& nodes() const noexcept { return *nodes_; }
  const std::shared_ptr<const Points>& shared_nodes() const noexcept {
    return nodes_;
  }
  std::span<const double> node(std::size_t i) const noexcept {
    return (*nodes_)[i];
  }
  const std::vector<double>& values() const noexcept { return values_; }
  const Box& box() const noexcept { return box_; }
  const SpatialIndex& index() const noexcept { return *index_; }

  /// Same nodes and box, different samples.
  PointSet with_values(std::vector<double> values) const;

 private:
  std::shared_ptr<const Points> nodes_;
  std::vector<double> values_;
  Box box_;
  std::shared_ptr<const SpatialIndex> index_;

  void validate() const;
  void build_index();
};

/// Regular grid {(i/2^l, j/2^l)} in row-major order (x fastest).
PointSet regular_grid(int level, const Field& field);

/// Digit reversal of k in `base`, mapped into [0, 1).
double radical_inverse(unsigned long long k, unsigned base);

/// 2-D Halton points (radical_inverse(k,2), radical_inverse(k,3)) for
/// k = start, ..., start + count - 1.
PointSet halton_points(std::size_t count, const Field& field,
                       unsigned long long start = 1);

struct FillDistanceEstimate {
  double h = 0.0;
  int probe_resolution = 0;
};

inline constexpr int kDefaultProbeResolution = 512;

/// max over a uniform probe grid (resolution^dim points spanning the declared
/// box, corners included) of the distance to the nearest node.
FillDistanceEstimate fill_distance(const PointSet& ps,
                                   int probe_resolution =
                                       kDefaultProbeResolution);

std::vector<std::size_t> neighbors_within(const PointSet& ps,
                                          std::span<const double> center,
                                          double radius);

/// Reads a 2-D node set from CSV with header `x,y,f`.
PointSet read_point_set_csv(const std::string& path);
void write_point_set_csv(const PointSet& ps, const std::string& path);

/// Reads query points from CSV whose header starts with `x,y`; further
/// columns are ignored.
Points read_query_csv(const std::string& path);

}  // namespace wenoshep
