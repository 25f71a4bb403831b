// etpa command-line front end. Links the public C API only; all physics
// lives behind etpa/etpa.h. Subcommands: response, spectrum, sweep, fit,
// power. Exit codes: 0 success, 2 configuration error, 3 data error.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "etpa/etpa.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct ConfigError {
  std::string message;
};
struct DataError {
  std::string message;
};

[[noreturn]] void fail_config(const std::string& msg) { throw ConfigError{msg}; }
[[noreturn]] void fail_data(const std::string& msg) { throw DataError{msg}; }

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string fmt_temp(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::vector<double> parse_temp_list(const std::string& list) {
  std::vector<double> temps;
  std::istringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument("trailing");
      temps.push_back(v);
    } catch (const std::exception&) {
      fail_config("--temps: bad temperature '" + item + "'");
    }
  }
  if (temps.empty()) fail_config("--temps: empty list");
  return temps;
}

// ---------------------------------------------------------------------------
// Configuration file: '[section]' headers, 'key = value' entries, '#'
// comments. Keys are addressed as section.key; 'molecule.state' may repeat.
// ---------------------------------------------------------------------------

struct StateParam {
  double lambda_nm;
  double gamma_2pi_thz;
  double dipole;
};

struct RunConfig {
  // molecule
  std::optional<std::string> molecule_preset;
  std::optional<double> lambda_f_nm;
  std::optional<double> gamma_f_2pi_thz;
  std::vector<StateParam> states;
  // crystal + pump
  std::string dispersion = "mgo_cln_e";
  double length_mm = 20.0;
  double poling_period_um = 6.9575;
  bool thermal_expansion = false;
  double pump_center_nm = 532.0;
  double pump_sigma_2pi_ghz = 1.7;
  // grid
  etpa_grid_config grid{};
  // sweep
  double t_min_c = 33.0;
  double t_max_c = 39.0;
  double t_step_c = 0.1;
  // response window
  double resp_lambda_min_nm = 1000.0;
  double resp_lambda_max_nm = 1140.0;
  int resp_n = 241;
  // sample
  double concentration_mmol_l = 0.5;
  double path_length_mm = 2.0;
  // optional affine rate correction, applied per column as
  // corrected = (raw - dark) / efficiency before fitting
  double dark_solv_cps = 0.0;
  double dark_samp_cps = 0.0;
  double efficiency_solv = 1.0;
  double efficiency_samp = 1.0;
};

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "on" || value == "1") return true;
  if (value == "false" || value == "off" || value == "0") return false;
  fail_config("config: " + key + " must be true/false, got '" + value + "'");
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    while (used < value.size() &&
           (value[used] == ' ' || value[used] == '\t')) {
      ++used;
    }
    if (used != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail_config("config: bad number '" + value + "' for " + key);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    fail_config("config: " + key + " must be an integer, got '" + value + "'");
  }
  return i;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_config("cannot open config file: " + path);

  RunConfig cfg;
  etpa_grid_config_default(&cfg.grid);

  std::string section;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::string line = (hash == std::string::npos) ? raw : raw.substr(0, hash);
    const auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    const auto b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);

    if (line.front() == '[') {
      if (line.back() != ']') {
        fail_config("config line " + std::to_string(line_no) +
                    ": unterminated section header");
      }
      section = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail_config("config line " + std::to_string(line_no) +
                  ": expected 'key = value'");
    }
    auto trim = [](std::string s) {
      const auto x = s.find_first_not_of(" \t");
      const auto y = s.find_last_not_of(" \t");
      return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
    };
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) {
      fail_config("config line " + std::to_string(line_no) + ": empty value for " + key);
    }

    if (key == "molecule.preset") {
      cfg.molecule_preset = value;
    } else if (key == "molecule.lambda_f_nm") {
      cfg.lambda_f_nm = parse_double(key, value);
    } else if (key == "molecule.gamma_f_2pi_thz") {
      cfg.gamma_f_2pi_thz = parse_double(key, value);
    } else if (key == "molecule.state") {
      std::istringstream ss(value);
      StateParam st{};
      if (!(ss >> st.lambda_nm >> st.gamma_2pi_thz >> st.dipole)) {
        fail_config("config line " + std::to_string(line_no) +
                    ": molecule.state needs 'lambda_nm gamma_2pi_thz dipole'");
      }
      std::string rest;
      if (ss >> rest) {
        fail_config("config line " + std::to_string(line_no) +
                    ": molecule.state has trailing fields");
      }
      cfg.states.push_back(st);
    } else if (key == "crystal.length_mm") {
      cfg.length_mm = parse_double(key, value);
    } else if (key == "crystal.poling_period_um") {
      cfg.poling_period_um = parse_double(key, value);
    } else if (key == "crystal.dispersion") {
      cfg.dispersion = value;
    } else if (key == "crystal.thermal_expansion") {
      cfg.thermal_expansion = parse_bool(key, value);
    } else if (key == "pump.center_nm") {
      cfg.pump_center_nm = parse_double(key, value);
    } else if (key == "pump.sigma_2pi_ghz") {
      cfg.pump_sigma_2pi_ghz = parse_double(key, value);
    } else if (key == "grid.n_sum") {
      cfg.grid.n_sum = parse_int(key, value);
    } else if (key == "grid.sum_half_width_sigmas") {
      cfg.grid.sum_half_width_sigmas = parse_double(key, value);
    } else if (key == "grid.n_diff") {
      cfg.grid.n_diff = parse_int(key, value);
    } else if (key == "grid.lambda_min_nm") {
      cfg.grid.lambda_min_nm = parse_double(key, value);
    } else if (key == "grid.lambda_max_nm") {
      cfg.grid.lambda_max_nm = parse_double(key, value);
    } else if (key == "sweep.t_min_c") {
      cfg.t_min_c = parse_double(key, value);
    } else if (key == "sweep.t_max_c") {
      cfg.t_max_c = parse_double(key, value);
    } else if (key == "sweep.t_step_c") {
      cfg.t_step_c = parse_double(key, value);
    } else if (key == "response.lambda_min_nm") {
      cfg.resp_lambda_min_nm = parse_double(key, value);
    } else if (key == "response.lambda_max_nm") {
      cfg.resp_lambda_max_nm = parse_double(key, value);
    } else if (key == "response.n") {
      cfg.resp_n = parse_int(key, value);
    } else if (key == "sample.concentration_mmol_l") {
      cfg.concentration_mmol_l = parse_double(key, value);
    } else if (key == "sample.path_length_mm") {
      cfg.path_length_mm = parse_double(key, value);
    } else if (key == "correction.dark_solv_cps") {
      cfg.dark_solv_cps = parse_double(key, value);
    } else if (key == "correction.dark_samp_cps") {
      cfg.dark_samp_cps = parse_double(key, value);
    } else if (key == "correction.efficiency_solv") {
      cfg.efficiency_solv = parse_double(key, value);
    } else if (key == "correction.efficiency_samp") {
      cfg.efficiency_samp = parse_double(key, value);
    } else {
      fail_config("config line " + std::to_string(line_no) + ": unknown key '" +
                  key + "'");
    }
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// C-API handle wrappers
// ---------------------------------------------------------------------------

std::string last_error() { return etpa_last_error(); }

struct Molecule {
  etpa_molecule* handle = nullptr;
  ~Molecule() { etpa_molecule_free(handle); }
};

struct Source {
  etpa_source* handle = nullptr;
  ~Source() { etpa_source_free(handle); }
};

constexpr double kTwoPi = 6.283185307179586476925286766559;

void build_molecule(const RunConfig& cfg, Molecule& mol) {
  const bool explicit_params =
      cfg.lambda_f_nm || cfg.gamma_f_2pi_thz || !cfg.states.empty();
  if (cfg.molecule_preset && explicit_params) {
    fail_config("molecule: give either 'preset' or explicit parameters, not both");
  }
  if (cfg.molecule_preset) {
    if (etpa_molecule_preset(cfg.molecule_preset->c_str(), &mol.handle) != ETPA_OK) {
      fail_config("molecule.preset: " + last_error());
    }
    return;
  }
  if (!explicit_params) {
    // no [molecule] section at all: the shipped default
    if (etpa_molecule_preset("nile_red", &mol.handle) != ETPA_OK) {
      fail_config("molecule.preset: " + last_error());
    }
    return;
  }
  if (!cfg.lambda_f_nm || !cfg.gamma_f_2pi_thz || cfg.states.empty()) {
    fail_config(
        "molecule: explicit parameters need lambda_f_nm, gamma_f_2pi_thz and "
        "at least one state");
  }
  if (etpa_molecule_create(*cfg.lambda_f_nm, kTwoPi * (*cfg.gamma_f_2pi_thz) * 1e12,
                           &mol.handle) != ETPA_OK) {
    fail_config("molecule: " + last_error());
  }
  for (const auto& st : cfg.states) {
    if (etpa_molecule_add_state(mol.handle, st.lambda_nm,
                                kTwoPi * st.gamma_2pi_thz * 1e12,
                                st.dipole) != ETPA_OK) {
      fail_config("molecule.state: " + last_error());
    }
  }
}

void build_source(const RunConfig& cfg, Source& src) {
  if (etpa_source_create(cfg.dispersion.c_str(), cfg.length_mm,
                         cfg.poling_period_um, cfg.pump_center_nm,
                         cfg.pump_sigma_2pi_ghz, &src.handle) != ETPA_OK) {
    fail_config("crystal/pump: " + last_error());
  }
  if (cfg.thermal_expansion &&
      etpa_source_set_thermal_expansion(src.handle, 1) != ETPA_OK) {
    fail_config("crystal.thermal_expansion: " + last_error());
  }
}

void validate_grid(const etpa_grid_config& g) {
  if (g.n_sum < 2) fail_config("grid.n_sum must be at least 2");
  if (g.n_diff < 2) fail_config("grid.n_diff must be at least 2");
  if (!(g.sum_half_width_sigmas > 0)) {
    fail_config("grid.sum_half_width_sigmas must be positive");
  }
  if (!(g.lambda_min_nm > 0) || !(g.lambda_max_nm > g.lambda_min_nm)) {
    fail_config("grid.lambda_min_nm/lambda_max_nm must be positive and ordered");
  }
}

// Cheap dispersion probe so out-of-range temperatures abort before any
// output file exists.
void validate_temperature(const Source& src, double temp_c) {
  double n = 0.0;
  if (etpa_refractive_index(src.handle, 1.064, temp_c, &n) != ETPA_OK) {
    fail_config("temperature " + fmt_temp(temp_c) + " C: " + last_error());
  }
}

std::filesystem::path prepare_out_dir(const std::string& out) {
  std::filesystem::path dir(out.empty() ? "." : out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail_config("cannot create output directory '" + out + "': " + ec.message());
  return dir;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_response(const RunConfig& cfg, const std::string& out) {
  Molecule mol;
  Source src;
  build_molecule(cfg, mol);
  build_source(cfg, src);
  if (cfg.resp_n < 2) fail_config("response.n must be at least 2");
  if (!(cfg.resp_lambda_min_nm > 0) ||
      !(cfg.resp_lambda_max_nm > cfg.resp_lambda_min_nm)) {
    fail_config("response.lambda_min_nm/lambda_max_nm must be positive and ordered");
  }

  const auto dir = prepare_out_dir(out);
  const auto csv = (dir / "response_map.csv").string();
  double li = 0.0, ls = 0.0, lmax = 0.0;
  if (etpa_response_map_to_csv(mol.handle, cfg.resp_lambda_min_nm,
                               cfg.resp_lambda_max_nm, cfg.resp_lambda_min_nm,
                               cfg.resp_lambda_max_nm, cfg.resp_n, csv.c_str(),
                               &li, &ls, &lmax) != ETPA_OK) {
    fail_config("response: " + last_error());
  }
  if (lmax == 0.0) {
    std::cerr << "warning: response map is identically zero (all dipole products vanish)\n";
  }

  std::ofstream meta(dir / "response_max.txt");
  meta << "max_lambda_i_nm=" << fmt9(li) << "\n"
       << "max_lambda_s_nm=" << fmt9(ls) << "\n"
       << "max_abs_L=" << fmt9(lmax) << "\n"
       << "sum_frequency_line_nm=" << fmt9(cfg.pump_center_nm) << "\n"
       << "# sum line: 1/lambda_i + 1/lambda_s = 1/sum_frequency_line_nm\n";
  if (!meta) fail_config("cannot write response_max.txt");
  std::cout << "response_map=" << csv << "\n"
            << "max_lambda_i_nm=" << fmt9(li) << "\n"
            << "max_lambda_s_nm=" << fmt9(ls) << "\n";
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, const std::string& out,
                 const std::vector<double>& temps, bool incoherent) {
  if (temps.empty()) fail_config("spectrum: --temps requires at least one temperature");
  Molecule mol;
  Source src;
  build_molecule(cfg, mol);
  build_source(cfg, src);
  validate_grid(cfg.grid);
  for (double t : temps) validate_temperature(src, t);

  const auto dir = prepare_out_dir(out);
  for (double t : temps) {
    const auto csv = (dir / ("spectrum_T" + fmt_temp(t) + "C.csv")).string();
    if (etpa_spectrum_to_csv(src.handle, t, &cfg.grid, incoherent ? 1 : 0,
                             csv.c_str()) != ETPA_OK) {
      fail_config("spectrum at " + fmt_temp(t) + " C: " + last_error());
    }
    std::cout << "spectrum=" << csv << "\n";
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& out, bool refine,
              bool convergence) {
  Molecule mol;
  Source src;
  build_molecule(cfg, mol);
  build_source(cfg, src);
  validate_grid(cfg.grid);
  if (!(cfg.t_step_c > 0)) fail_config("sweep.t_step_c must be positive");
  if (cfg.t_max_c < cfg.t_min_c) fail_config("sweep.t_max_c must be >= sweep.t_min_c");
  validate_temperature(src, cfg.t_min_c);
  validate_temperature(src, cfg.t_max_c);

  const int n_t =
      1 + static_cast<int>((cfg.t_max_c - cfg.t_min_c) / cfg.t_step_c + 1e-9);

  const auto dir = prepare_out_dir(out);
  const auto csv = (dir / "sweep.csv").string();
  double t_opt = 0.0;
  if (etpa_sweep_to_csv(mol.handle, src.handle, cfg.t_min_c,
                        n_t > 1 ? cfg.t_min_c + (n_t - 1) * cfg.t_step_c
                                : cfg.t_min_c,
                        n_t, &cfg.grid, refine ? 1 : 0, csv.c_str(),
                        &t_opt) != ETPA_OK) {
    fail_config("sweep: " + last_error());
  }

  uint64_t fp = 0;
  if (etpa_model_fingerprint(mol.handle, src.handle, &cfg.grid, &fp) != ETPA_OK) {
    fail_config("sweep: " + last_error());
  }
  {
    char fp_hex[32];
    std::snprintf(fp_hex, sizeof(fp_hex), "%016" PRIx64, fp);
    std::ofstream meta(dir / "sweep_meta.txt");
    meta << "fingerprint=" << fp_hex << "\n"
         << "grid.n_sum=" << cfg.grid.n_sum << "\n"
         << "grid.sum_half_width_sigmas=" << fmt9(cfg.grid.sum_half_width_sigmas) << "\n"
         << "grid.n_diff=" << cfg.grid.n_diff << "\n"
         << "grid.lambda_min_nm=" << fmt9(cfg.grid.lambda_min_nm) << "\n"
         << "grid.lambda_max_nm=" << fmt9(cfg.grid.lambda_max_nm) << "\n"
         << "sweep.t_min_c=" << fmt9(cfg.t_min_c) << "\n"
         << "sweep.t_step_c=" << fmt9(cfg.t_step_c) << "\n"
         << "sweep.n_t=" << n_t << "\n";
    if (!meta) fail_config("cannot write sweep_meta.txt");
  }

  if (convergence) {
    const auto conv_csv = (dir / "convergence.csv").string();
    double max_rel = 0.0;
    if (etpa_convergence_to_csv(mol.handle, src.handle, cfg.t_min_c,
                                n_t > 1 ? cfg.t_min_c + (n_t - 1) * cfg.t_step_c
                                        : cfg.t_min_c,
                                n_t, &cfg.grid, conv_csv.c_str(),
                                &max_rel) != ETPA_OK) {
      fail_config("convergence check: " + last_error());
    }
    std::cout << "max_rel_change=" << fmt9(max_rel) << "\n";
  }

  std::cout << "optimal_T_C=" << fmt9(t_opt) << "\n";
  return 0;
}

int cmd_fit(const RunConfig& cfg, const std::string& out,
            const std::vector<double>& temps,
            const std::vector<std::string>& files, bool through_origin) {
  if (files.empty()) fail_config("fit: at least one input file required");
  if (temps.size() != files.size()) {
    fail_config("fit: --temps must list one temperature per input file (got " +
                std::to_string(temps.size()) + " temps for " +
                std::to_string(files.size()) + " files)");
  }
  if (!(cfg.concentration_mmol_l > 0)) {
    fail_config("sample.concentration_mmol_l must be positive");
  }
  if (!(cfg.path_length_mm > 0)) fail_config("sample.path_length_mm must be positive");
  if (!(cfg.efficiency_solv > 0)) fail_config("correction.efficiency_solv must be positive");
  if (!(cfg.efficiency_samp > 0)) fail_config("correction.efficiency_samp must be positive");

  struct Row {
    double t, slope, stderr_, intercept, sigma;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < files.size(); ++i) {
    int count = 0;
    if (etpa_rate_csv_read(files[i].c_str(), nullptr, nullptr, nullptr, 0,
                           &count) != ETPA_OK) {
      fail_data(files[i] + ": " + last_error());
    }
    if (count == 0) fail_data(files[i] + ": no data rows");
    if (count < 2) fail_data(files[i] + ": need at least 2 records for a slope");
    std::vector<double> r_solv(count), r_samp(count), r_abs(count);
    if (etpa_rate_csv_read(files[i].c_str(), r_solv.data(), r_samp.data(),
                           nullptr, count, &count) != ETPA_OK) {
      fail_data(files[i] + ": " + last_error());
    }
    for (int k = 0; k < count; ++k) {
      r_solv[k] = (r_solv[k] - cfg.dark_solv_cps) / cfg.efficiency_solv;
      r_samp[k] = (r_samp[k] - cfg.dark_samp_cps) / cfg.efficiency_samp;
    }
    int negatives = 0;
    if (etpa_absorption_rates(r_solv.data(), r_samp.data(), count, r_abs.data(),
                              &negatives) != ETPA_OK) {
      fail_data(files[i] + ": " + last_error());
    }
    if (negatives > 0) {
      std::cerr << "note: " << files[i] << ": " << negatives
                << " negative absorption rate(s) retained in the fit\n";
    }
    double slope = 0.0, intercept = 0.0, se = 0.0;
    if (etpa_linear_slope(r_solv.data(), r_abs.data(), count,
                          through_origin ? 1 : 0, &slope, &intercept,
                          &se) != ETPA_OK) {
      fail_data(files[i] + ": " + last_error());
    }
    double sigma = 0.0;
    if (etpa_cross_section(slope, cfg.concentration_mmol_l * 1e-3,
                           cfg.path_length_mm, &sigma) != ETPA_OK) {
      fail_data(files[i] + ": " + last_error());
    }
    rows.push_back({temps[i], slope, se, intercept, sigma});
  }

  const auto dir = prepare_out_dir(out);
  const auto report = (dir / "fit_report.csv").string();
  {
    std::vector<double> t, s, se, ic, sg;
    for (const auto& r : rows) {
      t.push_back(r.t);
      s.push_back(r.slope);
      se.push_back(r.stderr_);
      ic.push_back(r.intercept);
      sg.push_back(r.sigma);
    }
    if (etpa_fit_report_to_csv(report.c_str(), t.data(), s.data(), se.data(),
                               ic.data(), sg.data(),
                               static_cast<int>(rows.size())) != ETPA_OK) {
      fail_data("fit report: " + last_error());
    }
  }
  std::cout << "fit_report=" << report << "\n";

  if (rows.size() >= 4) {
    std::vector<double> t, sg;
    for (const auto& r : rows) {
      t.push_back(r.t);
      sg.push_back(r.sigma);
    }
    double coeffs[4] = {0, 0, 0, 0};
    if (etpa_cubic_trend(t.data(), sg.data(), static_cast<int>(t.size()),
                         coeffs) != ETPA_OK) {
      fail_data("cubic trend: " + last_error());
    }
    std::ofstream cubic(dir / "fit_cubic.csv");
    cubic << "c3,c2,c1,c0\n"
          << fmt9(coeffs[0]) << ',' << fmt9(coeffs[1]) << ',' << fmt9(coeffs[2])
          << ',' << fmt9(coeffs[3]) << "\n";
    if (!cubic) fail_data("cannot write fit_cubic.csv");
    std::cout << "fit_cubic=" << (dir / "fit_cubic.csv").string() << "\n";
  } else {
    std::cout << "cubic fit skipped (needs at least 4 temperatures, got "
              << rows.size() << ")\n";
  }
  return 0;
}

int cmd_power(const std::string& out, const std::string& file) {
  int count = 0;
  if (etpa_power_csv_read(file.c_str(), nullptr, nullptr, 0, &count) != ETPA_OK) {
    fail_data(file + ": " + last_error());
  }
  if (count < 3) fail_data(file + ": need at least 3 data rows, got " +
                           std::to_string(count));
  std::vector<double> p(count), r(count);
  if (etpa_power_csv_read(file.c_str(), p.data(), r.data(), count, &count) !=
      ETPA_OK) {
    fail_data(file + ": " + last_error());
  }
  double expo = 0.0, amp = 0.0, se = 0.0;
  if (etpa_power_law(p.data(), r.data(), count, &expo, &amp, &se) != ETPA_OK) {
    fail_data(file + ": " + last_error());
  }

  const auto dir = prepare_out_dir(out);
  const auto report = (dir / "power_report.csv").string();
  if (etpa_power_report_to_csv(report.c_str(), expo, amp, se) != ETPA_OK) {
    fail_data("power report: " + last_error());
  }
  std::cout << "exponent=" << fmt9(expo) << "\n"
            << "exponent_stderr=" << fmt9(se) << "\n"
            << "power_report=" << report << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entangled two-photon absorption toolkit"};
  app.set_version_flag("--version", []() { return std::string(etpa_version()); });
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string temps_arg;
  std::vector<std::string> files;
  bool refine = true;
  bool convergence = false;
  bool through_origin = false;
  bool incoherent = false;

  auto* response = app.add_subcommand("response", "molecular response map CSV");
  response->add_option("--config", config_path, "configuration file")->required();
  response->add_option("--out", out_dir, "output directory");

  auto* spectrum =
      app.add_subcommand("spectrum", "single-photon spectra at given temperatures");
  spectrum->add_option("--config", config_path, "configuration file")->required();
  spectrum->add_option("--out", out_dir, "output directory");
  spectrum->add_option("--temps", temps_arg,
                       "comma-separated crystal temperatures, deg C")
      ->required();
  spectrum->add_flag("--incoherent-marginal", incoherent,
                     "use the incoherent marginal instead of the coherent sum");

  auto* sweep = app.add_subcommand("sweep", "eTPA probability vs crystal temperature");
  sweep->add_option("--config", config_path, "configuration file")->required();
  sweep->add_option("--out", out_dir, "output directory");
  sweep->add_flag("--refine,!--no-refine", refine,
                  "parabolic sub-grid refinement of the optimum (default on)");
  sweep->add_flag("--convergence-check", convergence,
                  "re-run with doubled grids and report the max relative change");

  auto* fit = app.add_subcommand("fit", "cross sections from rate CSV files");
  fit->add_option("--config", config_path, "configuration file")->required();
  fit->add_option("--out", out_dir, "output directory");
  fit->add_option("--temps", temps_arg,
                  "comma-separated crystal temperature per input file, deg C")
      ->required();
  fit->add_option("files", files, "rate CSV files")->required();
  fit->add_flag("--through-origin", through_origin,
                "pin the regression intercept to zero");

  auto* power = app.add_subcommand("power", "power-law exponent fit");
  power->add_option("--out", out_dir, "output directory");
  power->add_option("file", files, "power_mw,rate_cps CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*response) {
      return cmd_response(load_config(config_path), out_dir);
    }
    if (*spectrum) {
      return cmd_spectrum(load_config(config_path), out_dir,
                          parse_temp_list(temps_arg), incoherent);
    }
    if (*sweep) {
      return cmd_sweep(load_config(config_path), out_dir, refine, convergence);
    }
    if (*fit) {
      return cmd_fit(load_config(config_path), out_dir,
                     parse_temp_list(temps_arg), files, through_origin);
    }
    if (*power) {
      return cmd_power(out_dir, files.front());
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
