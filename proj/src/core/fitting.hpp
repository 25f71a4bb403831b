#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace etpa {

struct RateRecord {
  double r_solv_cps{};  // transmission through pure solvent
  double r_samp_cps{};  // transmission through dissolved sample
  std::optional<double> pump_power_mw;
};

struct SampleSpec {
  double concentration_mol_l{};
  double path_length_mm{};
};

struct RateDataset {
  std::vector<RateRecord> records;
  SampleSpec sample;
  double temperature_c{};
};

struct AbsorptionPoint {
  double r_solv{};
  double r_abs{};  // r_solv - r_samp; negative values kept (noise), flagged below
};

struct AbsorptionRates {
  std::vector<AbsorptionPoint> points;
  std::size_t negative_count{};
};

AbsorptionRates absorption_rates(const RateDataset& dataset);

struct LineFit {
  double slope{};
  double intercept{};
  double slope_stderr{};  // 0 when too few points for a residual estimate
};

// Ordinary least squares; with `through_origin` the intercept is pinned to 0
// and slope = sum(xy)/sum(x^2). Throws SingularFitError on degenerate x.
LineFit linear_slope(std::span<const double> x, std::span<const double> y,
                     bool through_origin = false);

// sigma_e = slope / (c * L * N_A) with c in mol/cm^3 and L in cm; result in
// cm^2. Inputs are taken in the lab units mol/L and mm.
double cross_section_cm2(double slope, double concentration_mol_l,
                         double path_length_mm);

struct PowerLawResult {
  double exponent{};
  double amplitude{};
  double exponent_stderr{};
};

// Log-log line fit; requires >= 3 strictly positive pairs.
PowerLawResult power_law_exponent(std::span<const double> x,
                                  std::span<const double> y);

// Least-squares cubic in t, coefficients in descending degree
// {c3, c2, c1, c0}; exactly interpolating for 4 points. Requires >= 4 points.
std::array<double, 4> cubic_trend(std::span<const double> t,
                                  std::span<const double> y);

}  // namespace etpa
