#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "core/units.hpp"

namespace etpa {

// One intermediate level of the few-level fluorophore model.
struct IntermediateState {
  double omega_rad_s{};   // state frequency
  double gamma_rad_s{};   // linewidth, > 0
  double dipole_product{};  // mu_gj * mu_jf, real, sign allowed
};

// Few-level model: final two-photon state plus the intermediate ladder.
struct MoleculeModel {
  double omega_f_rad_s{};  // two-photon transition frequency
  double gamma_f_rad_s{};  // final-state width, > 0
  std::vector<IntermediateState> states;

  void validate() const;  // throws std::invalid_argument on broken invariants

  // Nile Red in ethanol-like solvent: target at 548 nm (width 2pi x 50 THz),
  // intermediates at 440 nm and 325 nm (widths 2pi x 24 THz), dipole
  // products 0.086 and 0.078.
  static MoleculeModel nile_red();
};

// omega_j - omega + i*gamma_j
std::complex<double> detuning(const IntermediateState& state, double omega_rad_s);

// Final-state lineshape g(omega0) = (1/pi) Gamma_f^2 / ((omega_f-omega0)^2 + Gamma_f^2);
// peak value 1/pi at omega0 = omega_f.
double lorentzian_lineshape(const MoleculeModel& model, double omega0_rad_s);

// Sum over intermediates without the sqrt(g) factor:
//   sum_j D_j (1/Delta_j(omega_i) + 1/Delta_j(omega_s))
std::complex<double> response_sum(const MoleculeModel& model, double omega_i,
                                  double omega_s);

// Full two-photon response sqrt(g(omega0)) * response_sum(omega_i, omega_s).
// omega0 is passed explicitly; callers integrating against a joint spectrum
// couple it to omega_i + omega_s themselves.
std::complex<double> response(const MoleculeModel& model, double omega_i,
                              double omega_s, double omega0);

// Response sampled on a rectangle with omega0 = omega_i + omega_s.
// Axes are uniform in frequency; row-major storage values[i * ns + s].
struct ResponseGrid {
  FrequencyGrid omega_i_axis;
  FrequencyGrid omega_s_axis;
  std::vector<std::complex<double>> values;

  const std::complex<double>& at(std::size_t i, std::size_t s) const {
    return values[i * omega_s_axis.size() + s];
  }
};

ResponseGrid response_map(const MoleculeModel& model, double lambda_i_lo_nm,
                          double lambda_i_hi_nm, double lambda_s_lo_nm,
                          double lambda_s_hi_nm, std::size_t n);

struct ResponseArgmax {
  std::size_t index_i{};
  std::size_t index_s{};
  double omega_i_rad_s{};
  double omega_s_rad_s{};
  double abs_value{};
};

// Largest |L| on the grid; ties resolved toward the smallest omega_i, then
// the smallest omega_s.
ResponseArgmax response_argmax(const ResponseGrid& grid);

}  // namespace etpa
