#include "core/spdc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "core/constants.hpp"
#include "core/errors.hpp"

namespace etpa {

namespace {

// Linear/quadratic expansion of the lithium niobate a-axis, referenced to
// 25 C (Emanueli & Arie, Appl. Opt. 42, 6661, 2003).
constexpr double kExpansionAlpha = 1.54e-5;  // 1/K
constexpr double kExpansionBeta = 5.3e-9;    // 1/K^2
constexpr double kExpansionRefC = 25.0;

}  // namespace

double CrystalSpec::poling_period_at(Temperature t) const {
  if (!thermal_expansion) return poling_period_m;
  const double dt = t.celsius - kExpansionRefC;
  return poling_period_m * (1.0 + kExpansionAlpha * dt + kExpansionBeta * dt * dt);
}

void CrystalSpec::validate() const {
  if (!(length_m > 0.0)) {
    throw std::invalid_argument("crystal: length must be positive");
  }
  if (!(poling_period_m > 0.0)) {
    throw std::invalid_argument("crystal: poling period must be positive");
  }
}

void PumpSpec::validate() const {
  if (!(omega_p0_rad_s > 0.0)) {
    throw std::invalid_argument("pump: center frequency must be positive");
  }
  if (!(sigma_rad_s > 0.0)) {
    throw std::invalid_argument("pump: bandwidth sigma must be positive");
  }
}

void GridConfig::validate() const {
  if (n_sum < 2 || n_diff < 2) {
    throw std::invalid_argument("grid: resolutions must be at least 2");
  }
  if (!(sum_half_width_sigmas > 0.0)) {
    throw std::invalid_argument("grid: sum half width must be positive");
  }
  if (!(lambda_min_nm > 0.0) || !(lambda_max_nm > lambda_min_nm)) {
    throw std::invalid_argument("grid: wavelength window must be positive and ordered");
  }
}

GridConfig GridConfig::doubled() const {
  GridConfig g = *this;
  g.n_sum = 2 * n_sum - 1;
  g.n_diff = 2 * n_diff - 1;
  return g;
}

double refractive_index(const SellmeierModel& model, double lambda_um,
                        Temperature t) {
  return model.index(lambda_um, t);
}

double wavevector(const SellmeierModel& model, double omega_rad_s, Temperature t) {
  const double lambda_um = kTwoPi * kSpeedOfLight / omega_rad_s * 1e6;
  return model.index(lambda_um, t) * omega_rad_s / kSpeedOfLight;
}

double phase_mismatch(const CrystalSpec& crystal, double omega_i, double omega_s,
                      Temperature t) {
  return wavevector(crystal.sellmeier, omega_i + omega_s, t) -
         wavevector(crystal.sellmeier, omega_i, t) -
         wavevector(crystal.sellmeier, omega_s, t) -
         kTwoPi / crystal.poling_period_at(t);
}

namespace {

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(x) / x;
}

}  // namespace

double phase_matching_amplitude(const CrystalSpec& crystal, double omega_i,
                                double omega_s, Temperature t) {
  return sinc(0.5 * phase_mismatch(crystal, omega_i, omega_s, t) * crystal.length_m);
}

double pump_amplitude(const PumpSpec& pump, double omega_rad_s) {
  const double d = omega_rad_s - pump.omega_p0_rad_s;
  const double s2 = pump.sigma_rad_s * pump.sigma_rad_s;
  return std::exp(-d * d / (2.0 * s2)) / std::sqrt(kTwoPi * s2);
}

JsaGrid build_jsa(const CrystalSpec& crystal, const PumpSpec& pump, Temperature t,
                  const GridConfig& grid) {
  crystal.validate();
  pump.validate();
  grid.validate();

  const double w_lo = wavelength_to_omega(grid.lambda_max_nm).rad_s;
  const double w_hi = wavelength_to_omega(grid.lambda_min_nm).rad_s;
  const double nu_max = std::max(std::abs(2.0 * w_hi - pump.omega_p0_rad_s),
                                 std::abs(2.0 * w_lo - pump.omega_p0_rad_s));

  JsaGrid jsa{FrequencyGrid::symmetric(pump.omega_p0_rad_s,
                                       grid.sum_half_width_sigmas * pump.sigma_rad_s,
                                       grid.n_sum),
              FrequencyGrid::symmetric(0.0, nu_max, grid.n_diff),
              {},
              0.0};
  jsa.values.resize(grid.n_sum * grid.n_diff);

  for (std::size_t i = 0; i < grid.n_sum; ++i) {
    const double w0 = jsa.omega0_axis[i];
    const double alpha = pump_amplitude(pump, w0);
    std::complex<double>* row = jsa.values.data() + i * grid.n_diff;
    for (std::size_t j = 0; j < grid.n_diff; ++j) {
      const double nu = jsa.nu_axis[j];
      const double wi = 0.5 * (w0 + nu);
      const double ws = 0.5 * (w0 - nu);
      row[j] = alpha * phase_matching_amplitude(crystal, wi, ws, t);
    }
  }

  jsa.norm = 1.0;
  renormalize(jsa);
  return jsa;
}

void renormalize(JsaGrid& jsa) {
  double sum_sq = 0.0;
  for (const auto& v : jsa.values) sum_sq += std::norm(v);
  const double scale = std::sqrt(sum_sq * jsa.omega0_axis.spacing() *
                                 jsa.nu_axis.spacing() * 0.5);
  if (!(scale > 0.0)) {
    throw std::invalid_argument("jsa: amplitude vanishes everywhere, cannot normalize");
  }
  for (auto& v : jsa.values) v /= scale;
  jsa.norm *= scale;
}

JsaGrid translated(const JsaGrid& jsa, double delta_omega0_rad_s) {
  return JsaGrid{jsa.omega0_axis.shifted(delta_omega0_rad_s), jsa.nu_axis,
                 jsa.values, jsa.norm};
}

Spectrum single_photon_spectrum(const JsaGrid& jsa, bool incoherent_marginal) {
  const std::size_t n0 = jsa.n_sum();
  const std::size_t nd = jsa.n_diff();
  const double dw0 = jsa.omega0_axis.spacing();
  const double w_mid = jsa.omega0_axis.midpoint();

  // Trapezoid over the sum axis for each difference-axis column; the
  // column's photon frequency is w_i = (w_mid + nu)/2, exact to the pump
  // bandwidth which is ~4 orders of magnitude below the spectral features.
  std::vector<double> raw(nd, 0.0);
  for (std::size_t j = 0; j < nd; ++j) {
    if (incoherent_marginal) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n0; ++i) {
        const double w = (i == 0 || i == n0 - 1) ? 0.5 : 1.0;
        acc += w * std::norm(jsa.at(i, j));
      }
      raw[j] = acc * dw0;
    } else {
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t i = 0; i < n0; ++i) {
        const double w = (i == 0 || i == n0 - 1) ? 0.5 : 1.0;
        acc += w * jsa.at(i, j);
      }
      raw[j] = std::norm(acc * dw0);
    }
  }

  const double peak = *std::max_element(raw.begin(), raw.end());
  if (!(peak > 0.0)) {
    throw std::invalid_argument("spectrum: amplitude vanishes everywhere");
  }

  Spectrum spec;
  spec.lambda_nm.resize(nd);
  spec.intensity.resize(nd);
  // wavelength ascends as nu descends
  for (std::size_t j = 0; j < nd; ++j) {
    const std::size_t src = nd - 1 - j;
    const double wi = 0.5 * (w_mid + jsa.nu_axis[src]);
    spec.lambda_nm[j] = omega_to_wavelength_nm({wi});
    spec.intensity[j] = raw[src] / peak;
  }
  return spec;
}

Temperature degenerate_pm_temperature(const CrystalSpec& crystal,
                                      AngularFrequency omega_deg,
                                      Temperature t_lo, Temperature t_hi) {
  crystal.validate();
  if (!(t_lo.celsius < t_hi.celsius)) {
    throw std::invalid_argument("degenerate_pm_temperature: bracket must satisfy t_lo < t_hi");
  }
  auto mismatch = [&](double t_c) {
    return phase_mismatch(crystal, omega_deg.rad_s, omega_deg.rad_s, {t_c});
  };
  double lo = t_lo.celsius;
  double hi = t_hi.celsius;
  double f_lo = mismatch(lo);
  double f_hi = mismatch(hi);
  if (f_lo == 0.0) return {lo};
  if (f_hi == 0.0) return {hi};
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw BracketError("degenerate_pm_temperature: phase mismatch has no sign change on [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "] C");
  }
  while (hi - lo > 0.01) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = mismatch(mid);
    if (f_mid == 0.0) return {mid};
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi)};
}

}  // namespace etpa
