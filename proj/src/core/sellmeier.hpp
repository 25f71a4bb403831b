#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/units.hpp"

namespace etpa {

// Temperature-dependent Sellmeier coefficient set,
//   f(T)  = (T - t0)(T + t1)
//   n^2   = a1 + b1 f + (a2 + b2 f)/(l^2 - (a3 + b3 f)^2)
//           + (a4 + b4 f)/(l^2 - a5^2) - a6 l^2        (l in um, T in deg C)
// The shipped sets live in data/sellmeier_mgo_cln.csv (embedded at build
// time); see that file for provenance.
struct SellmeierModel {
  std::string name;
  double a1{}, a2{}, a3{}, a4{}, a5{}, a6{};
  double b1{}, b2{}, b3{}, b4{};
  double t0_c{}, t1_c{};
  double lambda_min_um{}, lambda_max_um{};
  double temp_min_c{}, temp_max_c{};

  // Refractive index; throws std::domain_error naming the violated bound
  // when (lambda, T) falls outside the tabulated validity window.
  double index(double lambda_um, Temperature t) const;
};

// Parse a coefficient table in the data-file format ('#' comments,
// 17 comma-separated columns per row).
std::vector<SellmeierModel> parse_dispersion_table(std::string_view csv);

// Named lookup in the embedded table; throws std::invalid_argument listing
// the known names when `name` is absent.
const SellmeierModel& dispersion_by_name(std::string_view name);

std::vector<std::string> dispersion_names();

}  // namespace etpa
