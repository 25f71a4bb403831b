#include "core/units.hpp"

#include <stdexcept>
#include <string>

#include "core/constants.hpp"

namespace etpa {

AngularFrequency wavelength_to_omega(double lambda_nm) {
  if (!(lambda_nm > 0.0)) {
    throw std::domain_error("wavelength must be positive, got " +
                            std::to_string(lambda_nm) + " nm");
  }
  return {kTwoPi * kSpeedOfLight / (lambda_nm * 1e-9)};
}

double omega_to_wavelength_nm(AngularFrequency omega) {
  if (!(omega.rad_s > 0.0)) {
    throw std::domain_error("angular frequency must be positive, got " +
                            std::to_string(omega.rad_s) + " rad/s");
  }
  return kTwoPi * kSpeedOfLight / omega.rad_s * 1e9;
}

FrequencyGrid FrequencyGrid::linspace(double lo_rad_s, double hi_rad_s,
                                      std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("grid needs at least 2 points, got " +
                                std::to_string(n));
  }
  if (!(hi_rad_s > lo_rad_s)) {
    throw std::invalid_argument("grid bounds must satisfy lo < hi");
  }
  const double step = (hi_rad_s - lo_rad_s) / static_cast<double>(n - 1);
  std::vector<double> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = lo_rad_s + static_cast<double>(i) * step;
  }
  pts.back() = hi_rad_s;
  return FrequencyGrid(std::move(pts), step);
}

FrequencyGrid FrequencyGrid::symmetric(double center_rad_s,
                                       double half_width_rad_s, std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("grid needs at least 2 points, got " +
                                std::to_string(n));
  }
  if (!(half_width_rad_s > 0.0)) {
    throw std::invalid_argument("grid half width must be positive");
  }
  const double step = 2.0 * half_width_rad_s / static_cast<double>(n - 1);
  const double mid = 0.5 * static_cast<double>(n - 1);
  std::vector<double> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = center_rad_s + (static_cast<double>(i) - mid) * step;
  }
  return FrequencyGrid(std::move(pts), step);
}

FrequencyGrid FrequencyGrid::shifted(double delta_rad_s) const {
  std::vector<double> pts(points_);
  for (double& p : pts) p += delta_rad_s;
  return FrequencyGrid(std::move(pts), spacing_);
}

FrequencyGrid make_grid(AngularFrequency center, double half_width_rad_s,
                        std::size_t n) {
  return FrequencyGrid::symmetric(center.rad_s, half_width_rad_s, n);
}

}  // namespace etpa
