#include "core/molecule.hpp"

#include <cmath>
#include <stdexcept>

#include "core/constants.hpp"

namespace etpa {

void MoleculeModel::validate() const {
  if (!(omega_f_rad_s > 0.0)) {
    throw std::invalid_argument("molecule: omega_f must be positive");
  }
  if (!(gamma_f_rad_s > 0.0)) {
    throw std::invalid_argument("molecule: Gamma_f must be positive");
  }
  if (states.empty()) {
    throw std::invalid_argument("molecule: at least one intermediate state required");
  }
  for (const auto& st : states) {
    if (!(st.omega_rad_s > 0.0)) {
      throw std::invalid_argument("molecule: intermediate state frequency must be positive");
    }
    if (!(st.gamma_rad_s > 0.0)) {
      throw std::invalid_argument("molecule: intermediate state linewidth must be positive");
    }
    if (!std::isfinite(st.dipole_product)) {
      throw std::invalid_argument("molecule: dipole product must be finite");
    }
  }
}

MoleculeModel MoleculeModel::nile_red() {
  MoleculeModel m;
  m.omega_f_rad_s = wavelength_to_omega(548.0).rad_s;
  m.gamma_f_rad_s = kTwoPi * 50e12;
  m.states = {
      {wavelength_to_omega(440.0).rad_s, kTwoPi * 24e12, 0.086},
      {wavelength_to_omega(325.0).rad_s, kTwoPi * 24e12, 0.078},
  };
  return m;
}

std::complex<double> detuning(const IntermediateState& state, double omega_rad_s) {
  return {state.omega_rad_s - omega_rad_s, state.gamma_rad_s};
}

double lorentzian_lineshape(const MoleculeModel& model, double omega0_rad_s) {
  const double d = model.omega_f_rad_s - omega0_rad_s;
  const double g2 = model.gamma_f_rad_s * model.gamma_f_rad_s;
  return g2 / (kPi * (d * d + g2));
}

std::complex<double> response_sum(const MoleculeModel& model, double omega_i,
                                  double omega_s) {
  std::complex<double> sum{0.0, 0.0};
  for (const auto& st : model.states) {
    sum += st.dipole_product *
           (1.0 / detuning(st, omega_i) + 1.0 / detuning(st, omega_s));
  }
  return sum;
}

std::complex<double> response(const MoleculeModel& model, double omega_i,
                              double omega_s, double omega0) {
  return std::sqrt(lorentzian_lineshape(model, omega0)) *
         response_sum(model, omega_i, omega_s);
}

ResponseGrid response_map(const MoleculeModel& model, double lambda_i_lo_nm,
                          double lambda_i_hi_nm, double lambda_s_lo_nm,
                          double lambda_s_hi_nm, std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("response_map: n must be at least 2");
  }
  if (!(lambda_i_lo_nm > 0.0 && lambda_s_lo_nm > 0.0) ||
      !(lambda_i_hi_nm > lambda_i_lo_nm) || !(lambda_s_hi_nm > lambda_s_lo_nm)) {
    throw std::invalid_argument("response_map: wavelength ranges must be positive and ordered");
  }
  model.validate();

  // Axes uniform in frequency; long-wavelength end maps to the grid front.
  auto axis = [n](double lo_nm, double hi_nm) {
    return FrequencyGrid::linspace(wavelength_to_omega(hi_nm).rad_s,
                                   wavelength_to_omega(lo_nm).rad_s, n);
  };
  ResponseGrid grid{axis(lambda_i_lo_nm, lambda_i_hi_nm),
                    axis(lambda_s_lo_nm, lambda_s_hi_nm),
                    {}};
  grid.values.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = grid.omega_i_axis[i];
    for (std::size_t s = 0; s < n; ++s) {
      const double ws = grid.omega_s_axis[s];
      grid.values[i * n + s] = response(model, wi, ws, wi + ws);
    }
  }
  return grid;
}

ResponseArgmax response_argmax(const ResponseGrid& grid) {
  if (grid.values.empty()) {
    throw std::invalid_argument("response_argmax: empty grid");
  }
  const std::size_t ni = grid.omega_i_axis.size();
  const std::size_t ns = grid.omega_s_axis.size();
  ResponseArgmax best{0, 0, grid.omega_i_axis[0], grid.omega_s_axis[0],
                      std::abs(grid.at(0, 0))};
  for (std::size_t i = 0; i < ni; ++i) {
    for (std::size_t s = 0; s < ns; ++s) {
      const double v = std::abs(grid.at(i, s));
      // strict > keeps the first (lowest omega_i, then omega_s) on ties
      if (v > best.abs_value) {
        best = {i, s, grid.omega_i_axis[i], grid.omega_s_axis[s], v};
      }
    }
  }
  return best;
}

}  // namespace etpa
