// Exercises the shared-library surface end to end: handles, error codes,
// array outputs, and the CSV writers.

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "core/constants.hpp"
#include "core/molecule.hpp"
#include "core/units.hpp"
#include "doctest.h"
#include "etpa/etpa.h"

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "etpa_capi_tests";
  fs::create_directories(dir);
  return dir;
}

struct MoleculeHandle {
  etpa_molecule* h = nullptr;
  ~MoleculeHandle() { etpa_molecule_free(h); }
};

struct SourceHandle {
  etpa_source* h = nullptr;
  ~SourceHandle() { etpa_source_free(h); }
};

SourceHandle shipped_source() {
  SourceHandle src;
  REQUIRE(etpa_source_create("mgo_cln_e", 20.0, 6.9575, 532.0, 1.7, &src.h) ==
          ETPA_OK);
  return src;
}

MoleculeHandle nile_red() {
  MoleculeHandle mol;
  REQUIRE(etpa_molecule_preset("nile_red", &mol.h) == ETPA_OK);
  return mol;
}

etpa_grid_config small_grid() {
  etpa_grid_config g;
  etpa_grid_config_default(&g);
  g.n_sum = 33;
  g.n_diff = 2049;
  return g;
}

}  // namespace

TEST_CASE("version and unit conversions") {
  CHECK(etpa_version() != nullptr);

  double omega = 0.0;
  REQUIRE(etpa_wavelength_to_omega(1064.0, &omega) == ETPA_OK);
  CHECK(omega == doctest::Approx(1770349217395538.5).epsilon(1e-12));

  double lambda = 0.0;
  REQUIRE(etpa_omega_to_wavelength(omega, &lambda) == ETPA_OK);
  CHECK(lambda == doctest::Approx(1064.0).epsilon(1e-12));

  CHECK(etpa_wavelength_to_omega(-1.0, &omega) == ETPA_ERR_DOMAIN);
  CHECK(std::string(etpa_last_error()).find("positive") != std::string::npos);
  CHECK(etpa_wavelength_to_omega(532.0, nullptr) == ETPA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("molecule handles") {
  SUBCASE("unknown preset names the candidates") {
    etpa_molecule* mol = nullptr;
    CHECK(etpa_molecule_preset("rhodamine", &mol) == ETPA_ERR_INVALID_ARGUMENT);
    CHECK(mol == nullptr);
    CHECK(std::string(etpa_last_error()).find("nile_red") != std::string::npos);
  }
  SUBCASE("preset response matches the core library") {
    MoleculeHandle mol = nile_red();
    const etpa::MoleculeModel core = etpa::MoleculeModel::nile_red();
    const double w_half = 0.5 * core.omega_f_rad_s;
    double re = 0.0, im = 0.0;
    REQUIRE(etpa_molecule_response(mol.h, w_half, w_half, core.omega_f_rad_s,
                                   &re, &im) == ETPA_OK);
    const auto expected = etpa::response(core, w_half, w_half, core.omega_f_rad_s);
    CHECK(re == expected.real());
    CHECK(im == expected.imag());
  }
  SUBCASE("hand-built molecule validates lazily") {
    MoleculeHandle mol;
    REQUIRE(etpa_molecule_create(548.0, etpa::kTwoPi * 50e12, &mol.h) == ETPA_OK);
    double re = 0.0, im = 0.0;
    // no states yet
    CHECK(etpa_molecule_response(mol.h, 1e15, 1e15, 2e15, &re, &im) ==
          ETPA_ERR_INVALID_ARGUMENT);
    REQUIRE(etpa_molecule_add_state(mol.h, 440.0, etpa::kTwoPi * 24e12, 0.086) ==
            ETPA_OK);
    CHECK(etpa_molecule_response(mol.h, 1e15, 1e15, 2e15, &re, &im) == ETPA_OK);
    CHECK(etpa_molecule_add_state(mol.h, 440.0, -1.0, 0.1) ==
          ETPA_ERR_INVALID_ARGUMENT);
  }
}

TEST_CASE("source handles and dispersion") {
  SUBCASE("unknown coefficient set") {
    etpa_source* src = nullptr;
    CHECK(etpa_source_create("bbo", 20.0, 6.93, 532.0, 1.7, &src) ==
          ETPA_ERR_INVALID_ARGUMENT);
    CHECK(std::string(etpa_last_error()).find("mgo_cln_e") != std::string::npos);
  }
  SUBCASE("refractive index and its domain errors") {
    SourceHandle src = shipped_source();
    double n = 0.0;
    REQUIRE(etpa_refractive_index(src.h, 1.064, 35.0, &n) == ETPA_OK);
    CHECK(n == doctest::Approx(2.151011285219611).epsilon(1e-14));
    CHECK(etpa_refractive_index(src.h, 1.064, 300.0, &n) == ETPA_ERR_DOMAIN);
    CHECK(std::string(etpa_last_error()).find("above maximum") !=
          std::string::npos);
  }
  SUBCASE("degenerate phase-matching root and bracket error") {
    SourceHandle src = shipped_source();
    double root = 0.0;
    REQUIRE(etpa_degenerate_pm_temperature(src.h, 1064.0, 20.0, 60.0, &root) ==
            ETPA_OK);
    CHECK(root == doctest::Approx(34.87).epsilon(0.1 / 34.87));
    CHECK(etpa_degenerate_pm_temperature(src.h, 1064.0, 50.0, 60.0, &root) ==
          ETPA_ERR_BRACKET);
  }
  SUBCASE("thermal expansion toggle") {
    SourceHandle src = shipped_source();
    double base = 0.0, expanded = 0.0;
    REQUIRE(etpa_degenerate_pm_temperature(src.h, 1064.0, 20.0, 60.0, &base) ==
            ETPA_OK);
    REQUIRE(etpa_source_set_thermal_expansion(src.h, 1) == ETPA_OK);
    REQUIRE(etpa_degenerate_pm_temperature(src.h, 1064.0, 20.0, 60.0,
                                           &expanded) == ETPA_OK);
    CHECK(expanded < base);
    CHECK(std::abs(expanded - base) < 1.0);
    CHECK(etpa_source_set_thermal_expansion(nullptr, 1) ==
          ETPA_ERR_INVALID_ARGUMENT);
  }
}

TEST_CASE("spectrum through the C surface") {
  SourceHandle src = shipped_source();
  const etpa_grid_config grid = small_grid();
  std::vector<double> lambda(grid.n_diff), intensity(grid.n_diff);
  REQUIRE(etpa_single_photon_spectrum(src.h, 34.0, &grid, 0, lambda.data(),
                                      intensity.data()) == ETPA_OK);
  double peak = 0.0;
  double peak_lambda = 0.0;
  for (int i = 0; i < grid.n_diff; ++i) {
    if (intensity[i] > peak) {
      peak = intensity[i];
      peak_lambda = lambda[i];
    }
  }
  CHECK(peak == 1.0);
  CHECK(std::abs(peak_lambda - 1064.0) < 3.0);

  const fs::path csv = scratch_dir() / "spec.csv";
  REQUIRE(etpa_spectrum_to_csv(src.h, 34.0, &grid, 0, csv.string().c_str()) ==
          ETPA_OK);
  CHECK(fs::exists(csv));
}

TEST_CASE("engine through the C surface") {
  MoleculeHandle mol = nile_red();
  SourceHandle src = shipped_source();
  const etpa_grid_config grid = small_grid();

  double p_single = 0.0;
  REQUIRE(etpa_probability(mol.h, src.h, 35.8, &grid, &p_single) == ETPA_OK);
  CHECK(p_single > 0.0);

  const int n_t = 5;
  std::vector<double> temps(n_t), probs(n_t);
  REQUIRE(etpa_temperature_sweep(mol.h, src.h, 35.0, 36.0, n_t, &grid,
                                 temps.data(), probs.data()) == ETPA_OK);
  CHECK(temps.front() == 35.0);
  CHECK(temps.back() == 36.0);

  double t_opt = 0.0;
  REQUIRE(etpa_optimal_temperature(temps.data(), probs.data(), n_t, 1, &t_opt) ==
          ETPA_OK);
  CHECK(t_opt >= 35.0);
  CHECK(t_opt <= 36.0);

  double penalty = 0.0;
  REQUIRE(etpa_detuning_penalty(mol.h, src.h, 35.8, &grid, &penalty) == ETPA_OK);
  CHECK(penalty > 0.02);
  CHECK(penalty < 0.12);

  uint64_t fp1 = 0, fp2 = 0;
  REQUIRE(etpa_model_fingerprint(mol.h, src.h, &grid, &fp1) == ETPA_OK);
  etpa_grid_config other = grid;
  other.n_diff += 2;
  REQUIRE(etpa_model_fingerprint(mol.h, src.h, &other, &fp2) == ETPA_OK);
  CHECK(fp1 != fp2);

  SUBCASE("zero-dipole penalty reports the undefined ratio") {
    MoleculeHandle zero;
    REQUIRE(etpa_molecule_create(548.0, etpa::kTwoPi * 50e12, &zero.h) == ETPA_OK);
    REQUIRE(etpa_molecule_add_state(zero.h, 440.0, etpa::kTwoPi * 24e12, 0.0) ==
            ETPA_OK);
    CHECK(etpa_detuning_penalty(zero.h, src.h, 35.8, &grid, &penalty) ==
          ETPA_ERR_UNDEFINED_RATIO);
  }
  SUBCASE("sweep csv with refined optimum") {
    const fs::path csv = scratch_dir() / "sweep.csv";
    double t = 0.0;
    REQUIRE(etpa_sweep_to_csv(mol.h, src.h, 35.0, 36.0, 5, &grid, 1,
                              csv.string().c_str(), &t) == ETPA_OK);
    CHECK(fs::exists(csv));
    CHECK(t >= 35.0);
    CHECK(t <= 36.0);
  }
  SUBCASE("convergence csv") {
    const fs::path csv = scratch_dir() / "conv.csv";
    double max_rel = 1.0;
    etpa_grid_config coarse = grid;
    coarse.n_sum = 17;
    coarse.n_diff = 513;
    REQUIRE(etpa_convergence_to_csv(mol.h, src.h, 35.4, 35.6, 2, &coarse,
                                    csv.string().c_str(), &max_rel) == ETPA_OK);
    CHECK(fs::exists(csv));
    CHECK(max_rel < 0.05);
  }
}

TEST_CASE("response map through the C surface") {
  MoleculeHandle mol = nile_red();
  const fs::path csv = scratch_dir() / "map.csv";
  double li = 0.0, ls = 0.0, peak = 0.0;
  REQUIRE(etpa_response_map_to_csv(mol.h, 1000, 1140, 1000, 1140, 61,
                                   csv.string().c_str(), &li, &ls, &peak) ==
          ETPA_OK);
  CHECK(fs::exists(csv));
  CHECK(li == doctest::Approx(1140.0).epsilon(1e-9));
  CHECK(peak > 0.0);
}

TEST_CASE("fitting through the C surface") {
  SUBCASE("slope, cross section, absorption") {
    const double r_solv[4] = {100, 200, 300, 400};
    const double r_samp[4] = {90, 180, 270, 360};
    double r_abs[4];
    int negatives = -1;
    REQUIRE(etpa_absorption_rates(r_solv, r_samp, 4, r_abs, &negatives) ==
            ETPA_OK);
    CHECK(negatives == 0);
    CHECK(r_abs[3] == 40.0);

    double slope = 0.0, intercept = 0.0, se = 0.0;
    REQUIRE(etpa_linear_slope(r_solv, r_abs, 4, 0, &slope, &intercept, &se) ==
            ETPA_OK);
    CHECK(slope == doctest::Approx(0.1).epsilon(1e-12));

    double sigma = 0.0;
    REQUIRE(etpa_cross_section(0.22998089, 0.5e-3, 2.0, &sigma) == ETPA_OK);
    CHECK(sigma == doctest::Approx(3.818922525484111e-18).epsilon(1e-9));
    CHECK(etpa_cross_section(0.1, -1.0, 2.0, &sigma) ==
          ETPA_ERR_INVALID_ARGUMENT);
  }
  SUBCASE("singular fit reported as such") {
    const double x[3] = {2, 2, 2};
    const double y[3] = {1, 2, 3};
    double slope = 0.0;
    CHECK(etpa_linear_slope(x, y, 3, 0, &slope, nullptr, nullptr) ==
          ETPA_ERR_SINGULAR_FIT);
  }
  SUBCASE("power law and cubic") {
    const double x[5] = {1, 2, 3, 4, 5};
    const double y[5] = {1, 4, 9, 16, 25};
    double e = 0.0, a = 0.0, se = 0.0;
    REQUIRE(etpa_power_law(x, y, 5, &e, &a, &se) == ETPA_OK);
    CHECK(e == doctest::Approx(2.0).epsilon(1e-12));

    const double bad_y[5] = {1, -4, 9, 16, 25};
    CHECK(etpa_power_law(x, bad_y, 5, &e, &a, &se) == ETPA_ERR_DOMAIN);

    const double t[4] = {35, 36, 37, 38};
    const double v[4] = {42875, 46656, 50653, 54872};  // t^3
    double coeffs[4];
    REQUIRE(etpa_cubic_trend(t, v, 4, coeffs) == ETPA_OK);
    CHECK(coeffs[0] == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("rate csv two-call pattern") {
    const fs::path p = scratch_dir() / "rates.csv";
    {
      std::FILE* f = std::fopen(p.string().c_str(), "w");
      REQUIRE(f != nullptr);
      std::fputs("r_solv_cps,r_samp_cps,pump_power_mw\n10,8,1\n20,15,2\n", f);
      std::fclose(f);
    }
    int count = 0;
    REQUIRE(etpa_rate_csv_read(p.string().c_str(), nullptr, nullptr, nullptr, 0,
                               &count) == ETPA_OK);
    REQUIRE(count == 2);
    std::vector<double> solv(count), samp(count), power(count);
    REQUIRE(etpa_rate_csv_read(p.string().c_str(), solv.data(), samp.data(),
                               power.data(), count, &count) == ETPA_OK);
    CHECK(solv[1] == 20.0);
    CHECK(power[0] == 1.0);

    CHECK(etpa_rate_csv_read((scratch_dir() / "missing.csv").string().c_str(),
                             nullptr, nullptr, nullptr, 0,
                             &count) == ETPA_ERR_IO);
  }
  SUBCASE("report writers") {
    const double t[2] = {35, 36};
    const double s[2] = {0.06414287, 0.22998089};
    const double se[2] = {0.001, 0.002};
    const double ic[2] = {0, 0};
    const double sg[2] = {1e-24, 3e-24};
    const fs::path p = scratch_dir() / "fit_report.csv";
    REQUIRE(etpa_fit_report_to_csv(p.string().c_str(), t, s, se, ic, sg, 2) ==
            ETPA_OK);
    CHECK(fs::exists(p));
    const fs::path q = scratch_dir() / "power_report.csv";
    REQUIRE(etpa_power_report_to_csv(q.string().c_str(), 2.0, 1.0, 0.01) ==
            ETPA_OK);
    CHECK(fs::exists(q));
  }
}
