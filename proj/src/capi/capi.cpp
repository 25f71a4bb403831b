#include "etpa/etpa.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "core/constants.hpp"
#include "core/csvio.hpp"
#include "core/engine.hpp"
#include "core/errors.hpp"
#include "core/fitting.hpp"
#include "core/molecule.hpp"
#include "core/sellmeier.hpp"
#include "core/spdc.hpp"
#include "core/units.hpp"

struct etpa_molecule {
  etpa::MoleculeModel model;
};

struct etpa_source {
  etpa::CrystalSpec crystal;
  etpa::PumpSpec pump;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Runs `fn`, translating exceptions into status codes. Most-derived
// exception types first; ParseError etc. inherit std::runtime_error.
template <typename Fn>
etpa_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return ETPA_OK;
  } catch (const etpa::BracketError& e) {
    set_error(e.what());
    return ETPA_ERR_BRACKET;
  } catch (const etpa::SingularFitError& e) {
    set_error(e.what());
    return ETPA_ERR_SINGULAR_FIT;
  } catch (const etpa::UndefinedRatioError& e) {
    set_error(e.what());
    return ETPA_ERR_UNDEFINED_RATIO;
  } catch (const etpa::ParseError& e) {
    set_error(e.what());
    return ETPA_ERR_PARSE;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return ETPA_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return ETPA_ERR_INVALID_ARGUMENT;
  } catch (const std::runtime_error& e) {
    set_error(e.what());
    return ETPA_ERR_IO;
  } catch (const std::exception& e) {
    set_error(e.what());
    return ETPA_ERR_INTERNAL;
  }
}

etpa_status require(bool ok, const char* msg) {
  if (ok) return ETPA_OK;
  set_error(msg);
  return ETPA_ERR_INVALID_ARGUMENT;
}

#define ETPA_REQUIRE(cond, msg)                         \
  do {                                                  \
    if (etpa_status s_ = require((cond), (msg)); s_ != ETPA_OK) return s_; \
  } while (0)

etpa::GridConfig to_grid(const etpa_grid_config* grid) {
  etpa::GridConfig g;
  if (grid != nullptr) {
    if (grid->n_sum < 2 || grid->n_diff < 2) {
      throw std::invalid_argument("grid: resolutions must be at least 2");
    }
    g.n_sum = static_cast<std::size_t>(grid->n_sum);
    g.sum_half_width_sigmas = grid->sum_half_width_sigmas;
    g.n_diff = static_cast<std::size_t>(grid->n_diff);
    g.lambda_min_nm = grid->lambda_min_nm;
    g.lambda_max_nm = grid->lambda_max_nm;
    g.validate();
  }
  return g;
}

}  // namespace

extern "C" {

#ifndef ETPA_VERSION_STRING
#define ETPA_VERSION_STRING "0.0.0-dev"
#endif

const char* etpa_version(void) { return ETPA_VERSION_STRING; }

const char* etpa_last_error(void) { return g_last_error.c_str(); }

/* ---- units ------------------------------------------------------------ */

etpa_status etpa_wavelength_to_omega(double lambda_nm, double* omega_rad_s) {
  ETPA_REQUIRE(omega_rad_s != nullptr, "omega_rad_s is null");
  return guarded([&] { *omega_rad_s = etpa::wavelength_to_omega(lambda_nm).rad_s; });
}

etpa_status etpa_omega_to_wavelength(double omega_rad_s, double* lambda_nm) {
  ETPA_REQUIRE(lambda_nm != nullptr, "lambda_nm is null");
  return guarded([&] { *lambda_nm = etpa::omega_to_wavelength_nm({omega_rad_s}); });
}

/* ---- molecule --------------------------------------------------------- */

etpa_status etpa_molecule_create(double lambda_f_nm, double gamma_f_rad_s,
                                 etpa_molecule** out) {
  ETPA_REQUIRE(out != nullptr, "out is null");
  *out = nullptr;
  return guarded([&] {
    etpa::MoleculeModel m;
    m.omega_f_rad_s = etpa::wavelength_to_omega(lambda_f_nm).rad_s;
    m.gamma_f_rad_s = gamma_f_rad_s;
    if (!(gamma_f_rad_s > 0.0)) {
      throw std::invalid_argument("molecule: Gamma_f must be positive");
    }
    *out = new etpa_molecule{std::move(m)};
  });
}

etpa_status etpa_molecule_add_state(etpa_molecule* mol, double lambda_j_nm,
                                    double gamma_j_rad_s, double dipole_product) {
  ETPA_REQUIRE(mol != nullptr, "molecule handle is null");
  return guarded([&] {
    etpa::IntermediateState st{etpa::wavelength_to_omega(lambda_j_nm).rad_s,
                               gamma_j_rad_s, dipole_product};
    if (!(gamma_j_rad_s > 0.0)) {
      throw std::invalid_argument("molecule: intermediate state linewidth must be positive");
    }
    if (!std::isfinite(dipole_product)) {
      throw std::invalid_argument("molecule: dipole product must be finite");
    }
    mol->model.states.push_back(st);
  });
}

etpa_status etpa_molecule_preset(const char* name, etpa_molecule** out) {
  ETPA_REQUIRE(out != nullptr, "out is null");
  ETPA_REQUIRE(name != nullptr, "preset name is null");
  *out = nullptr;
  return guarded([&] {
    if (std::strcmp(name, "nile_red") != 0) {
      throw std::invalid_argument("unknown molecule preset '" + std::string(name) +
                                  "' (known: nile_red)");
    }
    *out = new etpa_molecule{etpa::MoleculeModel::nile_red()};
  });
}

void etpa_molecule_free(etpa_molecule* mol) { delete mol; }

etpa_status etpa_molecule_response(const etpa_molecule* mol, double omega_i_rad_s,
                                   double omega_s_rad_s, double omega0_rad_s,
                                   double* re, double* im) {
  ETPA_REQUIRE(mol != nullptr, "molecule handle is null");
  ETPA_REQUIRE(re != nullptr && im != nullptr, "output pointer is null");
  return guarded([&] {
    mol->model.validate();
    const auto v =
        etpa::response(mol->model, omega_i_rad_s, omega_s_rad_s, omega0_rad_s);
    *re = v.real();
    *im = v.imag();
  });
}

/* ---- SPDC source ------------------------------------------------------ */

etpa_status etpa_source_create(const char* dispersion_name,
                               double crystal_length_mm, double poling_period_um,
                               double pump_center_nm, double pump_sigma_2pi_ghz,
                               etpa_source** out) {
  ETPA_REQUIRE(out != nullptr, "out is null");
  ETPA_REQUIRE(dispersion_name != nullptr, "dispersion name is null");
  *out = nullptr;
  return guarded([&] {
    etpa::CrystalSpec crystal{crystal_length_mm * 1e-3, poling_period_um * 1e-6,
                              etpa::dispersion_by_name(dispersion_name)};
    crystal.validate();
    if (!(pump_sigma_2pi_ghz > 0.0)) {
      throw std::invalid_argument("pump: bandwidth sigma must be positive");
    }
    etpa::PumpSpec pump{etpa::wavelength_to_omega(pump_center_nm).rad_s,
                        etpa::kTwoPi * pump_sigma_2pi_ghz * 1e9};
    *out = new etpa_source{std::move(crystal), pump};
  });
}

void etpa_source_free(etpa_source* src) { delete src; }

etpa_status etpa_source_set_thermal_expansion(etpa_source* src, int enabled) {
  ETPA_REQUIRE(src != nullptr, "source handle is null");
  return guarded([&] { src->crystal.thermal_expansion = (enabled != 0); });
}

etpa_status etpa_refractive_index(const etpa_source* src, double lambda_um,
                                  double temp_c, double* n_out) {
  ETPA_REQUIRE(src != nullptr, "source handle is null");
  ETPA_REQUIRE(n_out != nullptr, "n_out is null");
  return guarded([&] {
    *n_out = etpa::refractive_index(src->crystal.sellmeier, lambda_um, {temp_c});
  });
}

etpa_status etpa_degenerate_pm_temperature(const etpa_source* src,
                                           double lambda_deg_nm, double t_lo_c,
                                           double t_hi_c, double* t_out_c) {
  ETPA_REQUIRE(src != nullptr, "source handle is null");
  ETPA_REQUIRE(t_out_c != nullptr, "t_out_c is null");
  return guarded([&] {
    *t_out_c = etpa::degenerate_pm_temperature(
                   src->crystal, etpa::wavelength_to_omega(lambda_deg_nm),
                   {t_lo_c}, {t_hi_c})
                   .celsius;
  });
}

void etpa_grid_config_default(etpa_grid_config* grid) {
  if (grid == nullptr) return;
  const etpa::GridConfig g;
  grid->n_sum = static_cast<int>(g.n_sum);
  grid->sum_half_width_sigmas = g.sum_half_width_sigmas;
  grid->n_diff = static_cast<int>(g.n_diff);
  grid->lambda_min_nm = g.lambda_min_nm;
  grid->lambda_max_nm = g.lambda_max_nm;
}

etpa_status etpa_single_photon_spectrum(const etpa_source* src, double temp_c,
                                        const etpa_grid_config* grid,
                                        int incoherent, double* lambda_nm,
                                        double* intensity) {
  ETPA_REQUIRE(src != nullptr, "source handle is null");
  ETPA_REQUIRE(lambda_nm != nullptr && intensity != nullptr,
               "output array is null");
  return guarded([&] {
    const auto g = to_grid(grid);
    const auto jsa = etpa::build_jsa(src->crystal, src->pump, {temp_c}, g);
    const auto spec = etpa::single_photon_spectrum(jsa, incoherent != 0);
    for (std::size_t i = 0; i < spec.lambda_nm.size(); ++i) {
      lambda_nm[i] = spec.lambda_nm[i];
      intensity[i] = spec.intensity[i];
    }
  });
}

etpa_status etpa_spectrum_to_csv(const etpa_source* src, double temp_c,
                                 const etpa_grid_config* grid, int incoherent,
                                 const char* csv_path) {
  ETPA_REQUIRE(src != nullptr, "source handle is null");
  ETPA_REQUIRE(csv_path != nullptr, "csv_path is null");
  return guarded([&] {
    const auto g = to_grid(grid);
    const auto jsa = etpa::build_jsa(src->crystal, src->pump, {temp_c}, g);
    etpa::write_spectrum_csv(csv_path,
                             etpa::single_photon_spectrum(jsa, incoherent != 0));
  });
}

/* ---- engine ------------------------------------------------------------ */

etpa_status etpa_probability(const etpa_molecule* mol, const etpa_source* src,
                             double temp_c, const etpa_grid_config* grid,
                             double* p_out) {
  ETPA_REQUIRE(mol != nullptr && src != nullptr, "handle is null");
  ETPA_REQUIRE(p_out != nullptr, "p_out is null");
  return guarded([&] {
    const auto g = to_grid(grid);
    const auto jsa = etpa::build_jsa(src->crystal, src->pump, {temp_c}, g);
    *p_out = etpa::probability(mol->model, jsa);
  });
}

etpa_status etpa_temperature_sweep(const etpa_molecule* mol,
                                   const etpa_source* src, double t_lo_c,
                                   double t_hi_c, int n_t,
                                   const etpa_grid_config* grid,
                                   double* temps_out, double* probs_out) {
  ETPA_REQUIRE(mol != nullptr && src != nullptr, "handle is null");
  ETPA_REQUIRE(temps_out != nullptr && probs_out != nullptr,
               "output array is null");
  ETPA_REQUIRE(n_t >= 1, "n_t must be at least 1");
  return guarded([&] {
    const auto curve = etpa::temperature_sweep(
        mol->model, src->crystal, src->pump, t_lo_c, t_hi_c,
        static_cast<std::size_t>(n_t), to_grid(grid));
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      temps_out[i] = curve.points[i].temperature_c;
      probs_out[i] = curve.points[i].probability;
    }
  });
}

etpa_status etpa_optimal_temperature(const double* temps_c, const double* probs,
                                     int n, int refine, double* t_opt_c) {
  ETPA_REQUIRE(temps_c != nullptr && probs != nullptr, "input array is null");
  ETPA_REQUIRE(t_opt_c != nullptr, "t_opt_c is null");
  ETPA_REQUIRE(n >= 1, "n must be at least 1");
  return guarded([&] {
    etpa::ProbabilityCurve curve;
    for (int i = 0; i < n; ++i) {
      curve.points.push_back({temps_c[i], probs[i]});
    }
    *t_opt_c = etpa::optimal_temperature(curve, refine != 0);
  });
}

etpa_status etpa_detuning_penalty(const etpa_molecule* mol,
                                  const etpa_source* src, double temp_c,
                                  const etpa_grid_config* grid, double* penalty) {
  ETPA_REQUIRE(mol != nullptr && src != nullptr, "handle is null");
  ETPA_REQUIRE(penalty != nullptr, "penalty is null");
  return guarded([&] {
    *penalty = etpa::detuning_penalty(mol->model, src->crystal, src->pump,
                                      {temp_c}, to_grid(grid));
  });
}

etpa_status etpa_sweep_to_csv(const etpa_molecule* mol, const etpa_source* src,
                              double t_lo_c, double t_hi_c, int n_t,
                              const etpa_grid_config* grid, int refine,
                              const char* csv_path, double* t_opt_c) {
  ETPA_REQUIRE(mol != nullptr && src != nullptr, "handle is null");
  ETPA_REQUIRE(csv_path != nullptr, "csv_path is null");
  ETPA_REQUIRE(n_t >= 1, "n_t must be at least 1");
  return guarded([&] {
    const auto curve = etpa::temperature_sweep(
        mol->model, src->crystal, src->pump, t_lo_c, t_hi_c,
        static_cast<std::size_t>(n_t), to_grid(grid));
    etpa::write_probability_curve_csv(csv_path, curve);
    if (t_opt_c != nullptr) {
      const bool do_refine = refine != 0 && curve.points.size() >= 3;
      *t_opt_c = etpa::optimal_temperature(curve, do_refine);
    }
  });
}

etpa_status etpa_convergence_to_csv(const etpa_molecule* mol,
                                    const etpa_source* src, double t_lo_c,
                                    double t_hi_c, int n_t,
                                    const etpa_grid_config* grid,
                                    const char* csv_path,
                                    double* max_rel_change) {
  ETPA_REQUIRE(mol != nullptr && src != nullptr, "handle is null");
  ETPA_REQUIRE(csv_path != nullptr, "csv_path is null");
  ETPA_REQUIRE(n_t >= 1, "n_t must be at least 1");
  return guarded([&] {
    const auto rep = etpa::convergence_check(mol->model, src->crystal, src->pump,
                                             t_lo_c, t_hi_c,
                                             static_cast<std::size_t>(n_t),
                                             to_grid(grid));
    etpa::write_convergence_csv(csv_path, rep);
    if (max_rel_change != nullptr) *max_rel_change = rep.max_rel_change;
  });
}

etpa_status etpa_model_fingerprint(const etpa_molecule* mol,
                                   const etpa_source* src,
                                   const etpa_grid_config* grid,
                                   uint64_t* fingerprint) {
  ETPA_REQUIRE(mol != nullptr && src != nullptr, "handle is null");
  ETPA_REQUIRE(fingerprint != nullptr, "fingerprint is null");
  return guarded([&] {
    *fingerprint = etpa::model_fingerprint(mol->model, src->crystal, src->pump,
                                           to_grid(grid));
  });
}

/* ---- response map ------------------------------------------------------ */

etpa_status etpa_response_map_to_csv(const etpa_molecule* mol,
                                     double lambda_i_min_nm,
                                     double lambda_i_max_nm,
                                     double lambda_s_min_nm,
                                     double lambda_s_max_nm, int n,
                                     const char* csv_path,
                                     double* max_lambda_i_nm,
                                     double* max_lambda_s_nm, double* max_abs_l) {
  ETPA_REQUIRE(mol != nullptr, "molecule handle is null");
  ETPA_REQUIRE(csv_path != nullptr, "csv_path is null");
  ETPA_REQUIRE(n >= 2, "n must be at least 2");
  return guarded([&] {
    const auto grid = etpa::response_map(mol->model, lambda_i_min_nm,
                                         lambda_i_max_nm, lambda_s_min_nm,
                                         lambda_s_max_nm,
                                         static_cast<std::size_t>(n));
    etpa::write_response_map_csv(csv_path, grid);
    const auto peak = etpa::response_argmax(grid);
    if (max_lambda_i_nm != nullptr) {
      *max_lambda_i_nm = etpa::omega_to_wavelength_nm({peak.omega_i_rad_s});
    }
    if (max_lambda_s_nm != nullptr) {
      *max_lambda_s_nm = etpa::omega_to_wavelength_nm({peak.omega_s_rad_s});
    }
    if (max_abs_l != nullptr) *max_abs_l = peak.abs_value;
  });
}

/* ---- fitting ------------------------------------------------------------ */

etpa_status etpa_rate_csv_read(const char* path, double* r_solv, double* r_samp,
                               double* pump_power_mw, int capacity, int* count) {
  ETPA_REQUIRE(path != nullptr, "path is null");
  ETPA_REQUIRE(count != nullptr, "count is null");
  return guarded([&] {
    const auto records = etpa::read_rate_csv(path);
    *count = static_cast<int>(records.size());
    const int n = std::min(capacity, *count);
    for (int i = 0; i < n; ++i) {
      if (r_solv != nullptr) r_solv[i] = records[i].r_solv_cps;
      if (r_samp != nullptr) r_samp[i] = records[i].r_samp_cps;
      if (pump_power_mw != nullptr) {
        pump_power_mw[i] = records[i].pump_power_mw.value_or(
            std::numeric_limits<double>::quiet_NaN());
      }
    }
  });
}

etpa_status etpa_absorption_rates(const double* r_solv, const double* r_samp,
                                  int n, double* r_abs, int* negative_count) {
  ETPA_REQUIRE(r_solv != nullptr && r_samp != nullptr && r_abs != nullptr,
               "array is null");
  ETPA_REQUIRE(n >= 1, "need at least one record");
  return guarded([&] {
    etpa::RateDataset ds;
    ds.sample = {1.0, 1.0};  // unused by the subtraction
    for (int i = 0; i < n; ++i) ds.records.push_back({r_solv[i], r_samp[i], {}});
    const auto rates = etpa::absorption_rates(ds);
    for (int i = 0; i < n; ++i) r_abs[i] = rates.points[i].r_abs;
    if (negative_count != nullptr) {
      *negative_count = static_cast<int>(rates.negative_count);
    }
  });
}

etpa_status etpa_linear_slope(const double* x, const double* y, int n,
                              int through_origin, double* slope,
                              double* intercept, double* slope_stderr) {
  ETPA_REQUIRE(x != nullptr && y != nullptr, "array is null");
  ETPA_REQUIRE(slope != nullptr, "slope is null");
  return guarded([&] {
    const auto fit =
        etpa::linear_slope({x, static_cast<std::size_t>(n < 0 ? 0 : n)},
                           {y, static_cast<std::size_t>(n < 0 ? 0 : n)},
                           through_origin != 0);
    *slope = fit.slope;
    if (intercept != nullptr) *intercept = fit.intercept;
    if (slope_stderr != nullptr) *slope_stderr = fit.slope_stderr;
  });
}

etpa_status etpa_cross_section(double slope, double concentration_mol_l,
                               double path_length_mm, double* sigma_e_cm2) {
  ETPA_REQUIRE(sigma_e_cm2 != nullptr, "sigma_e_cm2 is null");
  return guarded([&] {
    *sigma_e_cm2 =
        etpa::cross_section_cm2(slope, concentration_mol_l, path_length_mm);
  });
}

etpa_status etpa_power_law(const double* x, const double* y, int n,
                           double* exponent, double* amplitude,
                           double* exponent_stderr) {
  ETPA_REQUIRE(x != nullptr && y != nullptr, "array is null");
  ETPA_REQUIRE(exponent != nullptr, "exponent is null");
  return guarded([&] {
    const auto fit =
        etpa::power_law_exponent({x, static_cast<std::size_t>(n < 0 ? 0 : n)},
                                 {y, static_cast<std::size_t>(n < 0 ? 0 : n)});
    *exponent = fit.exponent;
    if (amplitude != nullptr) *amplitude = fit.amplitude;
    if (exponent_stderr != nullptr) *exponent_stderr = fit.exponent_stderr;
  });
}

etpa_status etpa_cubic_trend(const double* t, const double* y, int n,
                             double coeffs[4]) {
  ETPA_REQUIRE(t != nullptr && y != nullptr, "array is null");
  ETPA_REQUIRE(coeffs != nullptr, "coeffs is null");
  return guarded([&] {
    const auto c =
        etpa::cubic_trend({t, static_cast<std::size_t>(n < 0 ? 0 : n)},
                          {y, static_cast<std::size_t>(n < 0 ? 0 : n)});
    for (int i = 0; i < 4; ++i) coeffs[i] = c[i];
  });
}

etpa_status etpa_power_csv_read(const char* path, double* power_mw,
                                double* rate_cps, int capacity, int* count) {
  ETPA_REQUIRE(path != nullptr, "path is null");
  ETPA_REQUIRE(count != nullptr, "count is null");
  return guarded([&] {
    std::vector<double> p, r;
    etpa::read_power_csv(path, p, r);
    *count = static_cast<int>(p.size());
    const int n = std::min(capacity, *count);
    for (int i = 0; i < n; ++i) {
      if (power_mw != nullptr) power_mw[i] = p[i];
      if (rate_cps != nullptr) rate_cps[i] = r[i];
    }
  });
}

etpa_status etpa_fit_report_to_csv(const char* path, const double* temperature_c,
                                   const double* slope,
                                   const double* slope_stderr,
                                   const double* intercept,
                                   const double* sigma_e_cm2, int n) {
  ETPA_REQUIRE(path != nullptr, "path is null");
  ETPA_REQUIRE(temperature_c != nullptr && slope != nullptr &&
                   slope_stderr != nullptr && intercept != nullptr &&
                   sigma_e_cm2 != nullptr,
               "array is null");
  ETPA_REQUIRE(n >= 0, "n must be non-negative");
  return guarded([&] {
    std::vector<etpa::FitReportRow> rows;
    for (int i = 0; i < n; ++i) {
      rows.push_back({temperature_c[i], slope[i], slope_stderr[i], intercept[i],
                      sigma_e_cm2[i]});
    }
    etpa::write_fit_report_csv(path, rows);
  });
}

etpa_status etpa_power_report_to_csv(const char* path, double exponent,
                                     double amplitude, double exponent_stderr) {
  ETPA_REQUIRE(path != nullptr, "path is null");
  return guarded([&] {
    etpa::write_power_report_csv(path, {exponent, amplitude, exponent_stderr});
  });
}

} /* extern "C" */
