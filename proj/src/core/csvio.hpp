#pragma once

#include <string>
#include <vector>

#include "core/engine.hpp"
#include "core/fitting.hpp"
#include "core/molecule.hpp"
#include "core/spdc.hpp"

namespace etpa {

// Fixed 9-significant-digit formatting ('.' decimal separator); every file
// writer funnels floats through this so repeated runs are byte-identical.
std::string format_sig9(double v);

// lambda_i_nm,lambda_s_nm,abs_L — one row per node, lambda_i ascending
// outer, lambda_s ascending inner.
void write_response_map_csv(const std::string& path, const ResponseGrid& grid);

// lambda_nm,intensity_normalized
void write_spectrum_csv(const std::string& path, const Spectrum& spectrum);

// temperature_C,probability_rel
void write_probability_curve_csv(const std::string& path,
                                 const ProbabilityCurve& curve);

// temperature_C,p_base,p_refined,rel_change
void write_convergence_csv(const std::string& path, const ConvergenceReport& rep);

struct FitReportRow {
  double temperature_c{};
  double slope{};
  double slope_stderr{};
  double intercept{};
  double sigma_e_cm2{};
};

// temperature_C,slope,slope_stderr,intercept,sigma_e_cm2
void write_fit_report_csv(const std::string& path,
                          const std::vector<FitReportRow>& rows);

// exponent,amplitude,exponent_stderr
void write_power_report_csv(const std::string& path, const PowerLawResult& fit);

// Reader for the per-temperature rate files:
//   header 'r_solv_cps,r_samp_cps' or 'r_solv_cps,r_samp_cps,pump_power_mw',
//   '#' comments, '.' decimal separator.
// Throws ParseError (with line number) on malformed input.
std::vector<RateRecord> read_rate_csv(const std::string& path);

// Reader for 'power_mw,rate_cps' files, same comment rules.
void read_power_csv(const std::string& path, std::vector<double>& power_mw,
                    std::vector<double>& rate_cps);

}  // namespace etpa
