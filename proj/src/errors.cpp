#include "wenoshep/errors.hpp"

#include <sstream>

namespace wenoshep {
namespace {

std::string format_point(const std::vector<double>& p) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) os << ", ";
    os << p[k];
  }
  os << ')';
  return os.str();
}

std::string uncovered_message(const std::vector<std::size_t>& indices,
                              const std::vector<std::vector<double>>& points) {
  std::ostringstream os;
  os << indices.size() << " uncovered evaluation point(s):";
  const std::size_t shown = std::min<std::size_t>(indices.size(), 10);
  for (std::size_t k = 0; k < shown; ++k) {
    os << " #" << indices[k] << ' ' << format_point(points[k]);
  }
  if (shown < indices.size()) os << " ...";
  return os.str();
}

}  // namespace

EmptySupportError::EmptySupportError(std::vector<double> point)
    : std::runtime_error("empty kernel support at " + format_point(point)),
      point_(std::move(point)) {}

UncoveredPointsError::UncoveredPointsError(
    std::vector<std::size_t> indices, std::vector<std::vector<double>> points)
    : std::runtime_error(uncovered_message(indices, points)),
      indices_(std::move(indices)),
      points_(std::move(points)) {}

}  // namespace wenoshep
