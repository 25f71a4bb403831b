#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "core/constants.hpp"
#include "core/units.hpp"
#include "doctest.h"

using namespace etpa;

TEST_CASE("wavelength to angular frequency") {
  // 532 nm: c/lambda = 563.519657894... THz; rounds to the commonly quoted
  // 2pi x 564 THz.
  const double w532 = wavelength_to_omega(532.0).rad_s;
  CHECK(w532 / kTwoPi / 1e12 == doctest::Approx(563.51965789473672).epsilon(1e-12));
  CHECK(std::round(w532 / kTwoPi / 1e12) == 564.0);

  const double w1064 = wavelength_to_omega(1064.0).rad_s;
  CHECK(w1064 / kTwoPi / 1e12 == doctest::Approx(281.75982894736836).epsilon(1e-12));
  CHECK(w1064 == doctest::Approx(1770349217395538.5).epsilon(1e-12));

  CHECK_THROWS_AS(wavelength_to_omega(0.0), std::domain_error);
  CHECK_THROWS_AS(wavelength_to_omega(-5.0), std::domain_error);
}

TEST_CASE("omega to wavelength") {
  CHECK(omega_to_wavelength_nm({kTwoPi * 281.75982894736836e12}) ==
        doctest::Approx(1064.0).epsilon(1e-12));
  CHECK(omega_to_wavelength_nm({kTwoPi * 563.51965789473672e12}) ==
        doctest::Approx(532.0).epsilon(1e-12));
  CHECK_THROWS_AS(omega_to_wavelength_nm({0.0}), std::domain_error);
  CHECK_THROWS_AS(omega_to_wavelength_nm({-1.0}), std::domain_error);
}

TEST_CASE("conversion round trip is a bijection") {
  for (double lambda : {0.4, 1.0, 325.0, 532.0, 548.0, 1064.0, 1140.0, 4000.0}) {
    const double back = omega_to_wavelength_nm(wavelength_to_omega(lambda));
    CHECK(back == doctest::Approx(lambda).epsilon(1e-12));
  }
  const FrequencyGrid grid = make_grid(wavelength_to_omega(1064.0),
                                       kTwoPi * 30e12, 101);
  for (double w : grid.points()) {
    const double w_back = wavelength_to_omega(omega_to_wavelength_nm({w})).rad_s;
    CHECK(w_back == doctest::Approx(w).epsilon(1e-12));
  }
}

TEST_CASE("make_grid endpoints and symmetry") {
  const AngularFrequency center{2.0e15};
  const double hw = 3.0e12;

  const FrequencyGrid two = make_grid(center, hw, 2);
  CHECK(two.size() == 2);
  CHECK(two[0] == center.rad_s - hw);
  CHECK(two[1] == center.rad_s + hw);

  const FrequencyGrid three = make_grid(center, hw, 3);
  CHECK(three[1] == center.rad_s);  // exact middle point

  const FrequencyGrid grid = make_grid(center, hw, 101);
  CHECK(grid.spacing() == doctest::Approx(2.0 * hw / 100.0).epsilon(1e-12));

  CHECK_THROWS_AS(make_grid(center, hw, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(center, 0.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(center, -1.0, 5), std::invalid_argument);
}

TEST_CASE("grids are strictly increasing and uniform") {
  const FrequencyGrid grid = make_grid({1.77e15}, 2.36e14, 8193);
  const auto& pts = grid.points();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i] > pts[i - 1]);
    CHECK(std::abs((pts[i] - pts[i - 1]) - grid.spacing()) <=
          1e-9 * grid.spacing());
  }
}

TEST_CASE("grid reversal closure") {
  const FrequencyGrid grid = make_grid({5.0e14}, 1.0e13, 37);
  std::vector<double> pts = grid.points();
  std::reverse(pts.begin(), pts.end());
  std::reverse(pts.begin(), pts.end());
  CHECK(pts == grid.points());
}

TEST_CASE("shifted grid preserves spacing") {
  const FrequencyGrid grid = make_grid({5.0e14}, 1.0e13, 11);
  const FrequencyGrid moved = grid.shifted(2.5e12);
  CHECK(moved.spacing() == grid.spacing());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(moved[i] == grid[i] + 2.5e12);
  }
}
