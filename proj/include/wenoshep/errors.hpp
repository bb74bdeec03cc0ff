#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wenoshep {

/// Input data that cannot be parsed or violates a schema (bad CSV, bad config).
class MalformedInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No node lies inside the kernel support around an evaluation point.
class EmptySupportError : public std::runtime_error {
 public:
  explicit EmptySupportError(std::vector<double> point);

  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

/// Batch evaluation found uncovered points; carries their positions in the
/// input list.
class UncoveredPointsError : public std::runtime_error {
 public:
  UncoveredPointsError(std::vector<std::size_t> indices,
                       std::vector<std::vector<double>> points);

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  const std::vector<std::vector<double>>& points() const noexcept {
    return points_;
  }

 private:
  std::vector<std::size_t> indices_;
  std::vector<std::vector<double>> points_;
};

}  // namespace wenoshep
