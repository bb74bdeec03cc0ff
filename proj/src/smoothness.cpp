#include "wenoshep/smoothness.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wenoshep {
namespace {

constexpr double kEnlargeFactor = 1.5;
constexpr double kRankThreshold = 1e-10;

LinearFit constant_fit(std::size_t dim, std::span<const double> values) {
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  LinearFit fit;
  fit.coeffs.assign(dim + 1, 0.0);
  fit.coeffs[0] = mean;
  fit.rank_deficient = true;
  double r = 0.0;
  for (const double v : values) r += std::abs(v - mean);
  fit.residual_mean_abs = r / static_cast<double>(values.size());
  return fit;
}

}  // namespace

std::size_t RadiusRule::effective_min_size(std::size_t dim, std::size_t n) const noexcept {
  const std::size_t wanted = min_size == 0 ? 2 * (dim + 1) : min_size;
  return std::min(wanted, n);
}

double LinearFit::operator()(std::span<const double> x) const noexcept {
  double v = coeffs[0];
  for (std::size_t k = 0; k < x.size(); ++k) v += coeffs[k + 1] * x[k];
  return v;
}

std::size_t IndicatorVector::enlarged_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(enlargements.begin(), enlargements.end(), [](int e) { return e > 0; }));
}

Stencil build_stencil(const PointSet& ps, std::size_t i, double c, double h,
                      std::size_t min_size) {
  if (i >= ps.size()) throw std::out_of_range("build_stencil: node index out of range");
  if (!(c > 0.0) || !(h > 0.0)) {
    throw std::invalid_argument("build_stencil: c and h must be positive");
  }
  if (ps.size() < ps.dim() + 1) {
    throw std::invalid_argument("build_stencil: point set smaller than the minimum fit size");
  }
  const RadiusRule rule{c, h, min_size};
  const std::size_t need = rule.effective_min_size(ps.dim(), ps.size());

  Stencil st;
  st.center = i;
  st.radius = c * h;
  while (true) {
    ps.index().within(ps.node(i), st.radius, st.members);
    if (st.members.size() >= need) break;
    st.radius *= kEnlargeFactor;
    ++st.enlargements;
  }
  return st;
}

LinearFit linear_lsq_fit(const Points& points, std::span<const double> values,
                         std::optional<std::vector<double>> center) {
  const std::size_t n = points.size();
  const std::size_t d = points.dim();
  if (values.size() != n) throw std::invalid_argument("linear_lsq_fit: size mismatch");
  if (n < d + 1) throw std::invalid_argument("linear_lsq_fit: need at least dim + 1 points");

  std::vector<double> c(d, 0.0);
  if (center) {
    if (center->size() != d) throw std::invalid_argument("linear_lsq_fit: center dimension");
    c = *center;
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < d; ++k) c[k] += points[j][k];
    }
    for (auto& v : c) v /= static_cast<double>(n);
  }

  double scale = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < d; ++k) scale = std::max(scale, std::abs(points[j][k] - c[k]));
  }
  if (!(scale > 0.0)) return constant_fit(d, values);

  Eigen::MatrixXd a(n, d + 1);
  Eigen::VectorXd b(n);
  for (std::size_t j = 0; j < n; ++j) {
    a(j, 0) = 1.0;
    for (std::size_t k = 0; k < d; ++k) a(j, k + 1) = (points[j][k] - c[k]) / scale;
    b(j) = values[j];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(kRankThreshold);
  if (qr.rank() < static_cast<Eigen::Index>(d + 1)) return constant_fit(d, values);

  const Eigen::VectorXd z = qr.solve(b);
  const Eigen::VectorXd resid = b - a * z;

  LinearFit fit;
  fit.coeffs.assign(d + 1, 0.0);
  fit.coeffs[0] = z(0);
  for (std::size_t k = 0; k < d; ++k) {
    fit.coeffs[k + 1] = z(k + 1) / scale;
    fit.coeffs[0] -= fit.coeffs[k + 1] * c[k];
  }
  fit.residual_mean_abs = resid.cwiseAbs().sum() / static_cast<double>(n);
  return fit;
}

namespace {

double indicator_from_stencil(const PointSet& ps, const Stencil& st) {
  Points pts(ps.dim());
  pts.reserve(st.members.size());
  std::vector<double> vals;
  vals.reserve(st.members.size());
  for (const auto j : st.members) {
    pts.push_back(ps.node(j));
    vals.push_back(ps.values()[j]);
  }
  const auto ctr = ps.node(st.center);
  return linear_lsq_fit(pts, vals, std::vector<double>(ctr.begin(), ctr.end()))
      .residual_mean_abs;
}

}  // namespace

double smoothness_indicator(const PointSet& ps, std::size_t i, const RadiusRule& rule) {
  return indicator_from_stencil(ps, build_stencil(ps, i, rule.c, rule.h, rule.min_size));
}

IndicatorVector all_indicators(const PointSet& ps, const RadiusRule& rule) {
  IndicatorVector out;
  out.rule = rule;
  out.values.resize(ps.size());
  out.stencil_sizes.resize(ps.size());
  out.enlargements.resize(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Stencil st = build_stencil(ps, i, rule.c, rule.h, rule.min_size);
    out.values[i] = indicator_from_stencil(ps, st);
    out.stencil_sizes[i] = st.members.size();
    out.enlargements[i] = st.enlargements;
  }
  return out;
}

RadiusRule radius_rule_for(const PointSet& ps, double c, std::size_t min_size,
                           int probe_resolution) {
  return RadiusRule{c, fill_distance(ps, probe_resolution).h, min_size};
}

}  // namespace wenoshep
