#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "core/constants.hpp"
#include "core/engine.hpp"
#include "core/errors.hpp"
#include "core/molecule.hpp"
#include "core/spdc.hpp"
#include "core/units.hpp"
#include "doctest.h"
#include "presets.hpp"

using namespace etpa;
using etpa::testing::shipped_crystal;
using etpa::testing::shipped_pump;
using etpa::testing::small_grid;
using cd = std::complex<double>;

namespace {

MoleculeModel zero_dipole_model() {
  MoleculeModel m = MoleculeModel::nile_red();
  for (auto& st : m.states) st.dipole_product = 0.0;
  return m;
}

JsaGrid constant_jsa(double w0_center, double nu_half_width, std::size_t n_sum,
                     std::size_t n_diff) {
  JsaGrid jsa{FrequencyGrid::symmetric(w0_center, 10.0 * kTwoPi * 1e9, n_sum),
              FrequencyGrid::symmetric(0.0, nu_half_width, n_diff),
              {},
              1.0};
  jsa.values.assign(n_sum * n_diff, cd{1.0, 0.0});
  return jsa;
}

}  // namespace

TEST_CASE("inner amplitude") {
  SUBCASE("zero row integrates to zero") {
    JsaGrid jsa = constant_jsa(wavelength_to_omega(532.0).rad_s, kTwoPi * 1e13,
                               3, 101);
    for (std::size_t j = 0; j < jsa.n_diff(); ++j) {
      jsa.values[1 * jsa.n_diff() + j] = cd{0.0, 0.0};
    }
    CHECK(inner_amplitude(MoleculeModel::nile_red(), jsa, 1) == cd{0.0, 0.0});
  }
  SUBCASE("vanishing dipoles") {
    const JsaGrid jsa = constant_jsa(wavelength_to_omega(532.0).rad_s,
                                     kTwoPi * 1e13, 3, 101);
    CHECK(inner_amplitude(zero_dipole_model(), jsa, 1) == cd{0.0, 0.0});
  }
  SUBCASE("closed-form integral for one state over a flat amplitude") {
    // With A = 1 on a symmetric window and a single intermediate state,
    //   integral dnu [1/Delta(w_i) + 1/Delta(w_s)] = 4 ln((A + W/2)/(A - W/2)),
    //   A = w_j - w0/2 + i gamma,
    // so the half-Jacobian trapezoid result must be 2 D ln(...).
    const double w0 = wavelength_to_omega(532.0).rad_s;
    const double W = kTwoPi * 60e12;
    MoleculeModel m;
    m.omega_f_rad_s = w0;
    m.gamma_f_rad_s = kTwoPi * 50e12;
    m.states = {{wavelength_to_omega(440.0).rad_s, kTwoPi * 24e12, 0.31}};

    const JsaGrid jsa = constant_jsa(w0, W, 3, 20001);
    const cd inner = inner_amplitude(m, jsa, 1);

    const cd a{m.states[0].omega_rad_s - 0.5 * w0, m.states[0].gamma_rad_s};
    const cd expected = 2.0 * m.states[0].dipole_product *
                        std::log((a + 0.5 * W) / (a - 0.5 * W));
    CHECK(std::abs(inner - expected) <= 1e-9 * std::abs(expected));
  }
  SUBCASE("index out of range") {
    const JsaGrid jsa = constant_jsa(wavelength_to_omega(532.0).rad_s,
                                     kTwoPi * 1e13, 3, 11);
    CHECK_THROWS_AS(inner_amplitude(MoleculeModel::nile_red(), jsa, 3),
                    std::invalid_argument);
  }
}

TEST_CASE("probability") {
  const CrystalSpec crystal = shipped_crystal();
  const PumpSpec pump = shipped_pump();
  const GridConfig grid = small_grid();
  const JsaGrid jsa = build_jsa(crystal, pump, {35.8}, grid);
  const MoleculeModel nile = MoleculeModel::nile_red();
  const double p = probability(nile, jsa);

  SUBCASE("non-negative and finite") {
    CHECK(p > 0.0);
    CHECK(std::isfinite(p));
  }
  SUBCASE("vanishing dipoles give zero") {
    CHECK(probability(zero_dipole_model(), jsa) == 0.0);
  }
  SUBCASE("quadratic dipole scaling") {
    for (double s : {0.1, 3.0, 100.0}) {
      MoleculeModel scaled = nile;
      for (auto& st : scaled.states) st.dipole_product *= s;
      const double ps = probability(scaled, jsa);
      CHECK(std::abs(ps - s * s * p) <= 1e-10 * s * s * p);
    }
  }
  SUBCASE("global phase invariance") {
    JsaGrid rotated = jsa;
    const cd phase = std::polar(1.0, 1.234567);
    for (auto& v : rotated.values) v *= phase;
    CHECK(probability(nile, rotated) == doctest::Approx(p).epsilon(1e-12));
  }
  SUBCASE("normalization removes any constant rescaling") {
    JsaGrid scaled = jsa;
    for (auto& v : scaled.values) v *= 42.0;
    renormalize(scaled);
    CHECK(probability(nile, scaled) == doctest::Approx(p).epsilon(1e-12));
  }
}

TEST_CASE("temperature sweep") {
  const CrystalSpec crystal = shipped_crystal();
  const PumpSpec pump = shipped_pump();
  const GridConfig grid = small_grid();

  SUBCASE("zero-dipole model sweeps to zero") {
    const ProbabilityCurve curve = temperature_sweep(
        zero_dipole_model(), crystal, pump, 35.0, 36.0, 5, grid);
    REQUIRE(curve.points.size() == 5);
    for (const auto& pt : curve.points) CHECK(pt.probability == 0.0);
  }
  SUBCASE("temperatures strictly increasing, endpoints exact") {
    const ProbabilityCurve curve = temperature_sweep(
        MoleculeModel::nile_red(), crystal, pump, 35.0, 36.0, 11, grid);
    CHECK(curve.points.front().temperature_c == 35.0);
    CHECK(curve.points.back().temperature_c == 36.0);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
      CHECK(curve.points[i].temperature_c > curve.points[i - 1].temperature_c);
    }
  }
  SUBCASE("dispersion failures name the offending temperature") {
    try {
      temperature_sweep(MoleculeModel::nile_red(), crystal, pump, 190.0, 210.0,
                        3, grid);
      FAIL("expected domain_error");
    } catch (const std::domain_error& e) {
      CHECK(std::string(e.what()).find("sweep temperature") != std::string::npos);
    }
  }
  SUBCASE("argument checks") {
    CHECK_THROWS_AS(temperature_sweep(MoleculeModel::nile_red(), crystal, pump,
                                      36.0, 35.0, 5, grid),
                    std::invalid_argument);
    CHECK_THROWS_AS(temperature_sweep(MoleculeModel::nile_red(), crystal, pump,
                                      35.0, 36.0, 0, grid),
                    std::invalid_argument);
  }
}

TEST_CASE("optimal temperature") {
  auto curve_from = [](const std::vector<double>& ts,
                       const std::vector<double>& ps) {
    ProbabilityCurve c;
    for (std::size_t i = 0; i < ts.size(); ++i) c.points.push_back({ts[i], ps[i]});
    return c;
  };

  SUBCASE("parabola vertex recovered exactly") {
    std::vector<double> ts, ps;
    for (int t = 45; t <= 55; ++t) {
      ts.push_back(t);
      ps.push_back(100.0 - (t - 50.0) * (t - 50.0));
    }
    CHECK(optimal_temperature(curve_from(ts, ps), true) ==
          doctest::Approx(50.0).epsilon(1e-12));
  }
  SUBCASE("monotone curve returns the endpoint, refinement skipped") {
    const auto c = curve_from({1, 2, 3, 4}, {0.1, 0.2, 0.3, 0.4});
    CHECK(optimal_temperature(c, true) == 4.0);
    CHECK(optimal_temperature(c, false) == 4.0);
  }
  SUBCASE("ties break toward the lower temperature") {
    const auto c = curve_from({1, 2, 3}, {0.5, 0.5, 0.5});
    CHECK(optimal_temperature(c, false) == 1.0);
  }
  SUBCASE("refinement needs three points") {
    const auto c = curve_from({1, 2}, {0.1, 0.2});
    CHECK_THROWS_AS(optimal_temperature(c, true), std::invalid_argument);
    CHECK(optimal_temperature(c, false) == 2.0);
  }
  SUBCASE("empty curve rejected") {
    CHECK_THROWS_AS(optimal_temperature(ProbabilityCurve{}, false),
                    std::invalid_argument);
  }
}

TEST_CASE("detuning penalty") {
  const CrystalSpec crystal = shipped_crystal();
  const GridConfig grid = small_grid();

  SUBCASE("pump centered on the response maximum gives zero") {
    const MoleculeModel nile = MoleculeModel::nile_red();
    const ResponseGrid map = response_map(nile, grid.lambda_min_nm,
                                          grid.lambda_max_nm, grid.lambda_min_nm,
                                          grid.lambda_max_nm, 241);
    const ResponseArgmax peak = response_argmax(map);
    const PumpSpec centered{peak.omega_i_rad_s + peak.omega_s_rad_s,
                            kTwoPi * 1.7e9};
    CHECK(detuning_penalty(nile, crystal, centered, {35.8}, grid) == 0.0);
  }
  SUBCASE("zero-dipole model has no reference") {
    CHECK_THROWS_AS(detuning_penalty(zero_dipole_model(), crystal,
                                     shipped_pump(), {35.8}, grid),
                    UndefinedRatioError);
  }
  SUBCASE("shipped preset loses a few percent") {
    const double penalty = detuning_penalty(MoleculeModel::nile_red(), crystal,
                                            shipped_pump(), {35.8}, grid);
    CHECK(penalty > 0.02);
    CHECK(penalty < 0.12);
  }
}

TEST_CASE("convergence under grid doubling") {
  const ConvergenceReport rep =
      convergence_check(MoleculeModel::nile_red(), shipped_crystal(),
                        shipped_pump(), 34.9, 35.1, 3, small_grid());
  REQUIRE(rep.rel_change.size() == 3);
  MESSAGE("max relative change on grid doubling: ", rep.max_rel_change);
  CHECK(rep.max_rel_change < 0.005);
}

TEST_CASE("fingerprint tracks the parameters") {
  const MoleculeModel nile = MoleculeModel::nile_red();
  const CrystalSpec crystal = shipped_crystal();
  const PumpSpec pump = shipped_pump();
  const GridConfig grid;

  const auto base = model_fingerprint(nile, crystal, pump, grid);
  CHECK(base == model_fingerprint(nile, crystal, pump, grid));

  MoleculeModel other = nile;
  other.states[0].dipole_product += 1e-6;
  CHECK(model_fingerprint(other, crystal, pump, grid) != base);

  CrystalSpec other_crystal = crystal;
  other_crystal.poling_period_m = 6.93e-6;
  CHECK(model_fingerprint(nile, other_crystal, pump, grid) != base);

  GridConfig other_grid = grid;
  other_grid.n_diff += 2;
  CHECK(model_fingerprint(nile, crystal, pump, other_grid) != base);
}
