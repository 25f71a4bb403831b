/* etpa — entangled two-photon absorption toolkit, public C API.
 *
 * The library models the two-photon response of a fluorophore, a
 * temperature-tuned type-0 SPDC photon-pair source, the resulting eTPA
 * probability as a spectral-overlap integral, and the reduction of
 * measured transmission rates to absorption cross sections.
 *
 * Conventions:
 *   - handles are opaque; every *_create has a matching *_free
 *   - functions return etpa_status; output values go through pointers
 *   - etpa_last_error() describes the most recent failure on the calling
 *     thread
 *   - frequencies are angular (rad/s), wavelengths vacuum nm unless a
 *     parameter name says otherwise
 */

#ifndef ETPA_H
#define ETPA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#ifdef ETPA_BUILD
#define ETPA_API __declspec(dllexport)
#else
#define ETPA_API __declspec(dllimport)
#endif
#else
#define ETPA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum etpa_status {
  ETPA_OK = 0,
  ETPA_ERR_INVALID_ARGUMENT = 1, /* broken precondition or bad parameter   */
  ETPA_ERR_DOMAIN = 2,           /* input outside a model validity window  */
  ETPA_ERR_BRACKET = 3,          /* root bracketing failed                 */
  ETPA_ERR_SINGULAR_FIT = 4,     /* degenerate regression input            */
  ETPA_ERR_UNDEFINED_RATIO = 5,  /* ratio against a vanishing reference    */
  ETPA_ERR_PARSE = 6,            /* malformed input file                   */
  ETPA_ERR_IO = 7,               /* file system failure                    */
  ETPA_ERR_INTERNAL = 8
} etpa_status;

ETPA_API const char* etpa_version(void);

/* Message for the last error on this thread; empty string if none. */
ETPA_API const char* etpa_last_error(void);

/* ---- units ------------------------------------------------------------ */

ETPA_API etpa_status etpa_wavelength_to_omega(double lambda_nm,
                                              double* omega_rad_s);
ETPA_API etpa_status etpa_omega_to_wavelength(double omega_rad_s,
                                              double* lambda_nm);

/* ---- molecule --------------------------------------------------------- */

typedef struct etpa_molecule etpa_molecule;

/* Empty model; add at least one intermediate state before use. */
ETPA_API etpa_status etpa_molecule_create(double lambda_f_nm,
                                          double gamma_f_rad_s,
                                          etpa_molecule** out);
ETPA_API etpa_status etpa_molecule_add_state(etpa_molecule* mol,
                                             double lambda_j_nm,
                                             double gamma_j_rad_s,
                                             double dipole_product);
/* Built-in preset; currently "nile_red". */
ETPA_API etpa_status etpa_molecule_preset(const char* name, etpa_molecule** out);
ETPA_API void etpa_molecule_free(etpa_molecule* mol);

/* Two-photon response L_{omega0}(omega_i, omega_s). */
ETPA_API etpa_status etpa_molecule_response(const etpa_molecule* mol,
                                            double omega_i_rad_s,
                                            double omega_s_rad_s,
                                            double omega0_rad_s, double* re,
                                            double* im);

/* ---- SPDC source (crystal + pump) ------------------------------------- */

typedef struct etpa_source etpa_source;

/* dispersion_name selects an embedded Sellmeier coefficient set
 * (e.g. "mgo_cln_e"). */
ETPA_API etpa_status etpa_source_create(const char* dispersion_name,
                                        double crystal_length_mm,
                                        double poling_period_um,
                                        double pump_center_nm,
                                        double pump_sigma_2pi_ghz,
                                        etpa_source** out);
ETPA_API void etpa_source_free(etpa_source* src);

/* Scale the grating period with the crystal's thermal expansion (off by
 * default; sub-degree effect on phase-matching temperatures). */
ETPA_API etpa_status etpa_source_set_thermal_expansion(etpa_source* src,
                                                       int enabled);

ETPA_API etpa_status etpa_refractive_index(const etpa_source* src,
                                           double lambda_um, double temp_c,
                                           double* n_out);

/* Bisection root of the collinear degenerate phase mismatch, 0.01 C
 * resolution. */
ETPA_API etpa_status etpa_degenerate_pm_temperature(const etpa_source* src,
                                                    double lambda_deg_nm,
                                                    double t_lo_c, double t_hi_c,
                                                    double* t_out_c);

/* Two-scale grid for the rotated JSA coordinates. */
typedef struct etpa_grid_config {
  int n_sum;                    /* points on the sum-frequency (pump) axis  */
  double sum_half_width_sigmas; /* sum-axis half width in pump sigmas       */
  int n_diff;                   /* points on the difference axis            */
  double lambda_min_nm;         /* photon window defining the diff axis     */
  double lambda_max_nm;
} etpa_grid_config;

ETPA_API void etpa_grid_config_default(etpa_grid_config* grid);

/* Single-photon spectrum at temp_c on the difference axis; both arrays
 * must hold grid->n_diff elements. incoherent != 0 selects the incoherent
 * marginal instead of the coherent sum. */
ETPA_API etpa_status etpa_single_photon_spectrum(const etpa_source* src,
                                                 double temp_c,
                                                 const etpa_grid_config* grid,
                                                 int incoherent,
                                                 double* lambda_nm,
                                                 double* intensity);

/* Same spectrum written as 'lambda_nm,intensity_normalized' CSV. */
ETPA_API etpa_status etpa_spectrum_to_csv(const etpa_source* src, double temp_c,
                                          const etpa_grid_config* grid,
                                          int incoherent, const char* csv_path);

/* ---- eTPA engine ------------------------------------------------------ */

/* Relative eTPA probability per photon pair at one crystal temperature. */
ETPA_API etpa_status etpa_probability(const etpa_molecule* mol,
                                      const etpa_source* src, double temp_c,
                                      const etpa_grid_config* grid, double* p_out);

/* n_t uniformly spaced temperatures over [t_lo_c, t_hi_c]; temps_out and
 * probs_out must hold n_t elements. */
ETPA_API etpa_status etpa_temperature_sweep(const etpa_molecule* mol,
                                            const etpa_source* src,
                                            double t_lo_c, double t_hi_c,
                                            int n_t,
                                            const etpa_grid_config* grid,
                                            double* temps_out,
                                            double* probs_out);

/* Argmax of a sampled curve; refine != 0 adds a parabolic sub-grid vertex
 * (needs n >= 3; skipped automatically at boundary maxima). */
ETPA_API etpa_status etpa_optimal_temperature(const double* temps_c,
                                              const double* probs, int n,
                                              int refine, double* t_opt_c);

/* 1 - P(actual pump) / P(pair spectrum shifted onto the response maximum). */
ETPA_API etpa_status etpa_detuning_penalty(const etpa_molecule* mol,
                                           const etpa_source* src, double temp_c,
                                           const etpa_grid_config* grid,
                                           double* penalty);

/* Sweep written as 'temperature_C,probability_rel' CSV; when refine != 0
 * *t_opt_c receives the refined optimum, else the grid argmax. */
ETPA_API etpa_status etpa_sweep_to_csv(const etpa_molecule* mol,
                                       const etpa_source* src, double t_lo_c,
                                       double t_hi_c, int n_t,
                                       const etpa_grid_config* grid, int refine,
                                       const char* csv_path, double* t_opt_c);

/* Grid-doubling self-check written as
 * 'temperature_C,p_base,p_refined,rel_change' CSV. */
ETPA_API etpa_status etpa_convergence_to_csv(const etpa_molecule* mol,
                                             const etpa_source* src,
                                             double t_lo_c, double t_hi_c,
                                             int n_t,
                                             const etpa_grid_config* grid,
                                             const char* csv_path,
                                             double* max_rel_change);

/* Stable hash of molecule + source + grid parameters (sidecar metadata). */
ETPA_API etpa_status etpa_model_fingerprint(const etpa_molecule* mol,
                                            const etpa_source* src,
                                            const etpa_grid_config* grid,
                                            uint64_t* fingerprint);

/* ---- molecular response map ------------------------------------------- */

/* |L| on an n x n window with omega0 = omega_i + omega_s, written as
 * 'lambda_i_nm,lambda_s_nm,abs_L' CSV. The argmax outputs are optional
 * (pass NULL to skip). */
ETPA_API etpa_status etpa_response_map_to_csv(const etpa_molecule* mol,
                                              double lambda_i_min_nm,
                                              double lambda_i_max_nm,
                                              double lambda_s_min_nm,
                                              double lambda_s_max_nm, int n,
                                              const char* csv_path,
                                              double* max_lambda_i_nm,
                                              double* max_lambda_s_nm,
                                              double* max_abs_l);

/* ---- rate fitting ------------------------------------------------------ */

/* Read a 'r_solv_cps,r_samp_cps[,pump_power_mw]' CSV. Call with
 * capacity == 0 to query the record count. Power entries are NaN when the
 * column is absent. */
ETPA_API etpa_status etpa_rate_csv_read(const char* path, double* r_solv,
                                        double* r_samp, double* pump_power_mw,
                                        int capacity, int* count);

/* r_abs = r_solv - r_samp per record; negative results are kept and
 * counted into *negative_count (may be NULL). */
ETPA_API etpa_status etpa_absorption_rates(const double* r_solv,
                                           const double* r_samp, int n,
                                           double* r_abs, int* negative_count);

/* Ordinary least squares y = slope * x + intercept; through_origin != 0
 * pins the intercept to zero. */
ETPA_API etpa_status etpa_linear_slope(const double* x, const double* y, int n,
                                       int through_origin, double* slope,
                                       double* intercept, double* slope_stderr);

/* sigma_e = slope / (c * L * N_A) in cm^2; c in mol/L, L in mm. */
ETPA_API etpa_status etpa_cross_section(double slope, double concentration_mol_l,
                                        double path_length_mm,
                                        double* sigma_e_cm2);

/* Log-log line fit; n >= 3 strictly positive pairs. */
ETPA_API etpa_status etpa_power_law(const double* x, const double* y, int n,
                                    double* exponent, double* amplitude,
                                    double* exponent_stderr);

/* Least-squares cubic, coefficients descending degree {c3,c2,c1,c0};
 * interpolating for exactly 4 points. */
ETPA_API etpa_status etpa_cubic_trend(const double* t, const double* y, int n,
                                      double coeffs[4]);

/* Read a 'power_mw,rate_cps' CSV (two-call pattern as etpa_rate_csv_read). */
ETPA_API etpa_status etpa_power_csv_read(const char* path, double* power_mw,
                                         double* rate_cps, int capacity,
                                         int* count);

/* 'temperature_C,slope,slope_stderr,intercept,sigma_e_cm2' CSV. */
ETPA_API etpa_status etpa_fit_report_to_csv(const char* path,
                                            const double* temperature_c,
                                            const double* slope,
                                            const double* slope_stderr,
                                            const double* intercept,
                                            const double* sigma_e_cm2, int n);

/* 'exponent,amplitude,exponent_stderr' CSV. */
ETPA_API etpa_status etpa_power_report_to_csv(const char* path, double exponent,
                                              double amplitude,
                                              double exponent_stderr);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ETPA_H */
