#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "core/molecule.hpp"
#include "core/spdc.hpp"
#include "core/units.hpp"

namespace etpa {

struct ProbabilityPoint {
  double temperature_c{};
  double probability{};  // relative units; the overall constant is fixed to 1
};

struct ProbabilityCurve {
  std::vector<ProbabilityPoint> points;  // strictly increasing temperature
  GridConfig grid;
  std::uint64_t fingerprint{};  // hash of molecule + source + grid parameters
};

// Inner line integral of the transition amplitude at one sum-frequency node:
// trapezoid over nu of response_sum * A * (1/2). The sqrt(g) factor depends
// on omega0 only and is applied by probability().
std::complex<double> inner_amplitude(const MoleculeModel& model, const JsaGrid& jsa,
                                     std::size_t omega0_index);

// Relative transition probability per photon pair:
// trapezoid over omega0 of g(omega0) * |inner_amplitude|^2.
double probability(const MoleculeModel& model, const JsaGrid& jsa);

// Probability at n_t uniformly spaced temperatures, each with a freshly
// built, freshly normalized JSA. n_t == 1 is allowed when t_lo == t_hi.
ProbabilityCurve temperature_sweep(const MoleculeModel& model,
                                   const CrystalSpec& crystal, const PumpSpec& pump,
                                   double t_lo_c, double t_hi_c, std::size_t n_t,
                                   const GridConfig& grid);

// Argmax over the curve; with `refine`, a parabola through the maximum and
// its neighbors gives a sub-grid vertex (disabled automatically when the
// maximum sits on a boundary). Ties break toward the lower temperature.
double optimal_temperature(const ProbabilityCurve& curve, bool refine);

// 1 - P(actual pump center) / P(JSA translated onto the response maximum).
// The reference carries the identical pair spectrum rigidly along the sum
// axis, so the comparison isolates where the molecular response is sampled.
double detuning_penalty(const MoleculeModel& model, const CrystalSpec& crystal,
                        const PumpSpec& pump, Temperature t, const GridConfig& grid,
                        std::size_t response_map_n = 241);

struct ConvergenceReport {
  std::vector<double> temperature_c;
  std::vector<double> p_base;
  std::vector<double> p_refined;
  std::vector<double> rel_change;
  double max_rel_change{};
};

// Compare the sweep against a nested grid with doubled resolution on both
// axes (2n - 1 points).
ConvergenceReport convergence_check(const MoleculeModel& model,
                                    const CrystalSpec& crystal,
                                    const PumpSpec& pump, double t_lo_c,
                                    double t_hi_c, std::size_t n_t,
                                    const GridConfig& grid);

std::uint64_t model_fingerprint(const MoleculeModel& model,
                                const CrystalSpec& crystal, const PumpSpec& pump,
                                const GridConfig& grid);

}  // namespace etpa
