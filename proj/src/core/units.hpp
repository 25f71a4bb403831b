#pragma once

#include <cstddef>
#include <vector>

namespace etpa {

// Angular frequency in rad/s. External interfaces talk in nm or 2pi x THz
// and convert at the boundary; everything internal stays in rad/s.
struct AngularFrequency {
  double rad_s{};
};

// Crystal/oven temperature. Dispersion validity is checked where the value
// is consumed, not here.
struct Temperature {
  double celsius{};
};

AngularFrequency wavelength_to_omega(double lambda_nm);
double omega_to_wavelength_nm(AngularFrequency omega);

// Uniform, strictly increasing frequency axis.
class FrequencyGrid {
 public:
  static FrequencyGrid linspace(double lo_rad_s, double hi_rad_s, std::size_t n);
  // Symmetric axis about `center`; for odd n the middle point is exactly
  // `center` (the offsets are built as signed multiples of the spacing).
  static FrequencyGrid symmetric(double center_rad_s, double half_width_rad_s,
                                 std::size_t n);

  const std::vector<double>& points() const { return points_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  double midpoint() const { return 0.5 * (points_.front() + points_.back()); }

  FrequencyGrid shifted(double delta_rad_s) const;

 private:
  FrequencyGrid(std::vector<double> points, double spacing)
      : points_(std::move(points)), spacing_(spacing) {}

  std::vector<double> points_;
  double spacing_;
};

FrequencyGrid make_grid(AngularFrequency center, double half_width_rad_s,
                        std::size_t n);

}  // namespace etpa
