#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "core/csvio.hpp"
#include "core/errors.hpp"
#include "doctest.h"
#include "presets.hpp"

using namespace etpa;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "etpa_csv_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

}  // namespace

TEST_CASE("fixed-width float formatting") {
  CHECK(format_sig9(1.0) == "1");
  CHECK(format_sig9(0.1) == "0.1");
  CHECK(format_sig9(1234.56789) == "1234.56789");
  CHECK(format_sig9(3.818922525484111e-18) == "3.81892253e-18");
  CHECK(format_sig9(-0.06414287) == "-0.06414287");
}

TEST_CASE("rate csv reader") {
  const fs::path dir = scratch_dir();

  SUBCASE("two-column form with comments") {
    const fs::path p = dir / "rates2.csv";
    spit(p,
         "# transmission snapshot\n"
         "r_solv_cps,r_samp_cps\n"
         "100.5,80.25   # inline comment\n"
         "\n"
         "200,155\n");
    const auto records = read_rate_csv(p.string());
    REQUIRE(records.size() == 2);
    CHECK(records[0].r_solv_cps == 100.5);
    CHECK(records[0].r_samp_cps == 80.25);
    CHECK(!records[0].pump_power_mw.has_value());
  }
  SUBCASE("three-column form carries the pump power") {
    const fs::path p = dir / "rates3.csv";
    spit(p, "r_solv_cps,r_samp_cps,pump_power_mw\n10,8,1.5\n20,16,3\n");
    const auto records = read_rate_csv(p.string());
    REQUIRE(records.size() == 2);
    CHECK(records[1].pump_power_mw == 3.0);
  }
  SUBCASE("bad number reports its line") {
    const fs::path p = dir / "bad_number.csv";
    spit(p, "r_solv_cps,r_samp_cps\n10,8\nxx,5\n");
    try {
      read_rate_csv(p.string());
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 3);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("wrong header rejected") {
    const fs::path p = dir / "bad_header.csv";
    spit(p, "solvent,sample\n1,2\n");
    CHECK_THROWS_AS(read_rate_csv(p.string()), ParseError);
  }
  SUBCASE("wrong column count reports its line") {
    const fs::path p = dir / "bad_cols.csv";
    spit(p, "r_solv_cps,r_samp_cps\n1,2,3\n");
    try {
      read_rate_csv(p.string());
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 2);
    }
  }
  SUBCASE("negative rates rejected") {
    const fs::path p = dir / "neg.csv";
    spit(p, "r_solv_cps,r_samp_cps\n-1,2\n");
    CHECK_THROWS_AS(read_rate_csv(p.string()), ParseError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(read_rate_csv((dir / "nope.csv").string()),
                    std::runtime_error);
  }
}

TEST_CASE("power csv reader") {
  const fs::path dir = scratch_dir();
  const fs::path p = dir / "power.csv";
  spit(p, "power_mw,rate_cps\n1,2\n2,8\n# done\n3,18\n");
  std::vector<double> power, rate;
  read_power_csv(p.string(), power, rate);
  REQUIRE(power.size() == 3);
  CHECK(power[2] == 3.0);
  CHECK(rate[1] == 8.0);

  spit(p, "watts,counts\n1,2\n");
  CHECK_THROWS_AS(read_power_csv(p.string(), power, rate), ParseError);
}

TEST_CASE("response map export") {
  const fs::path dir = scratch_dir();
  const fs::path p = dir / "map.csv";
  const ResponseGrid grid =
      response_map(MoleculeModel::nile_red(), 1000, 1140, 1000, 1140, 5);
  write_response_map_csv(p.string(), grid);

  std::ifstream in(p);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "lambda_i_nm,lambda_s_nm,abs_L");

  std::size_t rows = 0;
  double prev_li = 0.0;
  bool ascending = true;
  while (std::getline(in, line)) {
    ++rows;
    const double li = std::stod(line.substr(0, line.find(',')));
    if (li < prev_li - 1e-9) {
      // lambda_i may only step when the inner index wraps
      ascending = ascending && false;
    }
    prev_li = li;
  }
  CHECK(rows == 25);
  CHECK(ascending);

  // first data row is the short-wavelength corner
  std::ifstream again(p);
  std::getline(again, line);
  std::getline(again, line);
  CHECK(line.substr(0, 10) == "1000,1000,");
}

TEST_CASE("spectrum and curve exports are deterministic") {
  const fs::path dir = scratch_dir();
  const JsaGrid jsa = build_jsa(etpa::testing::shipped_crystal(),
                                etpa::testing::shipped_pump(), {35.5},
                                etpa::testing::small_grid());
  const Spectrum spec = single_photon_spectrum(jsa);

  const fs::path s1 = dir / "spec1.csv";
  const fs::path s2 = dir / "spec2.csv";
  write_spectrum_csv(s1.string(), spec);
  write_spectrum_csv(s2.string(), spec);
  const std::string c1 = slurp(s1);
  CHECK(c1 == slurp(s2));
  CHECK(c1.substr(0, 31) == "lambda_nm,intensity_normalized\n");

  ProbabilityCurve curve;
  curve.points = {{33.0, 1.25e-19}, {33.1, 2.5e-19}};
  const fs::path c = dir / "curve.csv";
  write_probability_curve_csv(c.string(), curve);
  CHECK(slurp(c) ==
        "temperature_C,probability_rel\n33,1.25e-19\n33.1,2.5e-19\n");
}

TEST_CASE("fit report and power report formats") {
  const fs::path dir = scratch_dir();
  const fs::path p = dir / "report.csv";
  write_fit_report_csv(p.string(),
                       {{35.0, 0.06414287, 0.001, -0.5, 5.33e-24},
                        {36.0, 0.22998089, 0.002, 0.25, 1.909e-23}});
  const std::string content = slurp(p);
  CHECK(content.find("temperature_C,slope,slope_stderr,intercept,sigma_e_cm2\n") == 0);
  CHECK(content.find("36,0.22998089,0.002,0.25,1.909e-23\n") != std::string::npos);

  const fs::path q = dir / "power_report.csv";
  write_power_report_csv(q.string(), {2.0, 0.37, 0.013});
  CHECK(slurp(q) == "exponent,amplitude,exponent_stderr\n2,0.37,0.013\n");
}
