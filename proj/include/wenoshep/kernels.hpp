#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace wenoshep {

enum class KernelFamily { WendlandC2, WendlandC4, Custom };

/// (1 - eps r)_+^4 (4 eps r + 1). Throws std::invalid_argument for r < 0.
double wendland_c2(double r, double eps_shape);

/// (1 - eps r)_+^6 (35 (eps r)^2 + 18 eps r + 3). Throws for r < 0.
double wendland_c4(double r, double eps_shape);

/// floor((2^l + 1) / 2) / sqrt(2); ties the kernel support to the grid level.
double shape_parameter_for_level(int level);

/// Compactly supported radial weight omega(r).
///
/// For the Wendland families the support radius is 1/eps_shape and
/// omega(r) == 0 exactly for r >= support_radius(). A custom kernel supplies
/// its own function and support radius; it is clamped to 0 outside the
/// support.
class WeightKernel {
 public:
  static WeightKernel wendland(KernelFamily family, double eps_shape);
  static WeightKernel custom(std::string name, std::function<double(double)> omega,
                             double support_radius);

  double operator()(double r) const;

  KernelFamily family() const noexcept { return family_; }
  double eps_shape() const noexcept { return eps_shape_; }
  double support_radius() const noexcept { return support_radius_; }
  const std::string& name() const noexcept { return name_; }

 private:
  WeightKernel() = default;

  KernelFamily family_ = KernelFamily::WendlandC2;
  double eps_shape_ = 1.0;
  double support_radius_ = 1.0;
  std::string name_;
  std::shared_ptr<const std::function<double(double)>> custom_;
};

/// "w2" / "w4".
KernelFamily parse_kernel_family(std::string_view text);
std::string_view to_string(KernelFamily family);

}  // namespace wenoshep
