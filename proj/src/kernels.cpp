#include "wenoshep/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace wenoshep {
namespace {

void check_args(double r, double eps_shape) {
  if (!(r >= 0.0)) throw std::invalid_argument("kernel: distance must be non-negative");
  if (!(eps_shape > 0.0)) throw std::invalid_argument("kernel: shape parameter must be positive");
}

}  // namespace

double wendland_c2(double r, double eps_shape) {
  check_args(r, eps_shape);
  const double s = eps_shape * r;
  if (s >= 1.0) return 0.0;
  const double q = 1.0 - s;
  const double q2 = q * q;
  return q2 * q2 * (4.0 * s + 1.0);
}

double wendland_c4(double r, double eps_shape) {
  check_args(r, eps_shape);
  const double s = eps_shape * r;
  if (s >= 1.0) return 0.0;
  const double q = 1.0 - s;
  const double q3 = q * q * q;
  return q3 * q3 * (35.0 * s * s + 18.0 * s + 3.0);
}

double shape_parameter_for_level(int level) {
  if (level < 1 || level > 60) {
    throw std::invalid_argument("shape_parameter_for_level: level out of range");
  }
  const auto m = (std::uint64_t{1} << level) + 1;
  return static_cast<double>(m / 2) / std::sqrt(2.0);
}

WeightKernel WeightKernel::wendland(KernelFamily family, double eps_shape) {
  if (family == KernelFamily::Custom) {
    throw std::invalid_argument("WeightKernel::wendland: use custom() for custom kernels");
  }
  if (!(eps_shape > 0.0) || !std::isfinite(eps_shape)) {
    throw std::invalid_argument("WeightKernel: shape parameter must be positive");
  }
  WeightKernel k;
  k.family_ = family;
  k.eps_shape_ = eps_shape;
  k.support_radius_ = 1.0 / eps_shape;
  k.name_ = std::string(to_string(family));
  return k;
}

WeightKernel WeightKernel::custom(std::string name, std::function<double(double)> omega,
                                  double support_radius) {
  if (!omega) throw std::invalid_argument("WeightKernel::custom: empty function");
  if (!(support_radius > 0.0) || !std::isfinite(support_radius)) {
    throw std::invalid_argument("WeightKernel::custom: support radius must be positive");
  }
  WeightKernel k;
  k.family_ = KernelFamily::Custom;
  k.eps_shape_ = 1.0 / support_radius;
  k.support_radius_ = support_radius;
  k.name_ = std::move(name);
  k.custom_ = std::make_shared<const std::function<double(double)>>(std::move(omega));
  return k;
}

double WeightKernel::operator()(double r) const {
  if (!(r >= 0.0)) throw std::invalid_argument("kernel: distance must be non-negative");
  if (r >= support_radius_) return 0.0;
  switch (family_) {
    case KernelFamily::WendlandC2:
      return wendland_c2(r, eps_shape_);
    case KernelFamily::WendlandC4:
      return wendland_c4(r, eps_shape_);
    case KernelFamily::Custom:
      return std::max(0.0, (*custom_)(r));
  }
  return 0.0;
}

KernelFamily parse_kernel_family(std::string_view text) {
  if (text == "w2") return KernelFamily::WendlandC2;
  if (text == "w4") return KernelFamily::WendlandC4;
  throw std::invalid_argument("unknown kernel '" + std::string(text) + "' (expected w2|w4)");
}

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::WendlandC2:
      return "w2";
    case KernelFamily::WendlandC4:
      return "w4";
    case KernelFamily::Custom:
      return "custom";
  }
  return "?";
}

}  // namespace wenoshep
