#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "core/sellmeier.hpp"
#include "core/units.hpp"

namespace etpa {

struct CrystalSpec {
  double length_m{};          // crystal length
  double poling_period_m{};   // first-order QPM grating period at 25 C
  SellmeierModel sellmeier;
  // Scale the grating period with the crystal's thermal expansion
  // (lithium niobate a-axis, Lambda(T) = Lambda * (1 + a dT + b dT^2)).
  // Off by default; shifts phase-matching temperatures by well under a
  // degree over the operating range.
  bool thermal_expansion = false;

  double poling_period_at(Temperature t) const;
  void validate() const;
};

// Gaussian pump spectrum, amplitude-normalized:
//   alpha(w) = exp(-(w - w_p0)^2 / (2 sigma^2)) / sqrt(2 pi sigma^2)
struct PumpSpec {
  double omega_p0_rad_s{};
  double sigma_rad_s{};

  void validate() const;
};

double refractive_index(const SellmeierModel& model, double lambda_um,
                        Temperature t);

// k(w, T) = n_e(2 pi c / w, T) * w / c, rad/m
double wavevector(const SellmeierModel& model, double omega_rad_s, Temperature t);

// Delta k = k(w_i + w_s) - k(w_i) - k(w_s) - 2 pi / poling_period.
// Type-0: all three waves on the extraordinary axis.
double phase_mismatch(const CrystalSpec& crystal, double omega_i, double omega_s,
                      Temperature t);

// sinc(Delta k * l / 2), unnormalized sin(x)/x convention, sinc(0) = 1.
double phase_matching_amplitude(const CrystalSpec& crystal, double omega_i,
                                double omega_s, Temperature t);

double pump_amplitude(const PumpSpec& pump, double omega_rad_s);

// Two-scale grid for the rotated JSA coordinates: the sum axis spans the
// narrow pump support, the difference axis spans the wide phase-matching
// support expressed as a photon wavelength window.
struct GridConfig {
  std::size_t n_sum = 129;
  double sum_half_width_sigmas = 5.0;
  std::size_t n_diff = 8193;
  double lambda_min_nm = 1000.0;
  double lambda_max_nm = 1140.0;

  void validate() const;
  GridConfig doubled() const;  // 2n-1 points on both axes (nested refinement)
};

// Joint spectral amplitude on rotated axes w0 = w_i + w_s, nu = w_i - w_s,
// so w_i = (w0 + nu)/2 and w_s = (w0 - nu)/2. Unit-normalized:
//   sum |A|^2 * dw0 * dnu / 2 = 1   (1/2 = Jacobian of the rotation).
// `norm` keeps the pre-normalization L2 norm.
struct JsaGrid {
  FrequencyGrid omega0_axis;
  FrequencyGrid nu_axis;
  std::vector<std::complex<double>> values;  // row-major [i0 * n_diff + j]
  double norm{};

  std::size_t n_sum() const { return omega0_axis.size(); }
  std::size_t n_diff() const { return nu_axis.size(); }
  const std::complex<double>& at(std::size_t i0, std::size_t j) const {
    return values[i0 * nu_axis.size() + j];
  }
};

JsaGrid build_jsa(const CrystalSpec& crystal, const PumpSpec& pump, Temperature t,
                  const GridConfig& grid);

// Rescale `values` to unit L2 norm (norm field updated accordingly).
void renormalize(JsaGrid& jsa);

// Same amplitudes carried rigidly along the sum axis (omega0 -> omega0 + delta);
// norm and nu axis unchanged.
JsaGrid translated(const JsaGrid& jsa, double delta_omega0_rad_s);

struct Spectrum {
  std::vector<double> lambda_nm;   // ascending
  std::vector<double> intensity;   // unit peak
};

// Single-photon spectrum of the pair state. Default is the coherent sum
// |integral dw_s A(w_i, w_s)|^2; `incoherent_marginal` selects
// integral |A|^2 dw_s instead. Normalized to unit peak.
Spectrum single_photon_spectrum(const JsaGrid& jsa, bool incoherent_marginal = false);

// Bisection root of T -> Delta k(w_deg, w_deg, T) to 0.01 C resolution.
// Throws BracketError when the mismatch does not change sign on [t_lo, t_hi].
Temperature degenerate_pm_temperature(const CrystalSpec& crystal,
                                      AngularFrequency omega_deg,
                                      Temperature t_lo, Temperature t_hi);

}  // namespace etpa
