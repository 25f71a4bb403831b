#include "core/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace etpa {

std::string format_sig9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

// Strips comments/whitespace; returns false for skippable lines.
bool data_line(const std::string& raw, std::string& out) {
  const auto hash = raw.find('#');
  std::string s = (hash == std::string::npos) ? raw : raw.substr(0, hash);
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return false;
  const auto b = s.find_last_not_of(" \t\r");
  out = s.substr(a, b - a + 1);
  return true;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream ls(line);
  std::string f;
  while (std::getline(ls, f, ',')) {
    const auto a = f.find_first_not_of(" \t");
    const auto b = f.find_last_not_of(" \t");
    fields.push_back(a == std::string::npos ? "" : f.substr(a, b - a + 1));
  }
  return fields;
}

double parse_number(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) {
      throw ParseError("trailing characters in number '" + s + "'", line_no);
    }
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad number '" + s + "'", line_no);
  }
}

}  // namespace

void write_response_map_csv(const std::string& path, const ResponseGrid& grid) {
  auto out = open_out(path);
  out << "lambda_i_nm,lambda_s_nm,abs_L\n";
  const std::size_t ni = grid.omega_i_axis.size();
  const std::size_t ns = grid.omega_s_axis.size();
  for (std::size_t i = ni; i-- > 0;) {          // omega descending = lambda ascending
    for (std::size_t s = ns; s-- > 0;) {
      out << format_sig9(omega_to_wavelength_nm({grid.omega_i_axis[i]})) << ','
          << format_sig9(omega_to_wavelength_nm({grid.omega_s_axis[s]})) << ','
          << format_sig9(std::abs(grid.at(i, s))) << '\n';
    }
  }
  finish(out, path);
}

void write_spectrum_csv(const std::string& path, const Spectrum& spectrum) {
  auto out = open_out(path);
  out << "lambda_nm,intensity_normalized\n";
  for (std::size_t i = 0; i < spectrum.lambda_nm.size(); ++i) {
    out << format_sig9(spectrum.lambda_nm[i]) << ','
        << format_sig9(spectrum.intensity[i]) << '\n';
  }
  finish(out, path);
}

void write_probability_curve_csv(const std::string& path,
                                 const ProbabilityCurve& curve) {
  auto out = open_out(path);
  out << "temperature_C,probability_rel\n";
  for (const auto& pt : curve.points) {
    out << format_sig9(pt.temperature_c) << ',' << format_sig9(pt.probability)
        << '\n';
  }
  finish(out, path);
}

void write_convergence_csv(const std::string& path, const ConvergenceReport& rep) {
  auto out = open_out(path);
  out << "temperature_C,p_base,p_refined,rel_change\n";
  for (std::size_t i = 0; i < rep.temperature_c.size(); ++i) {
    out << format_sig9(rep.temperature_c[i]) << ',' << format_sig9(rep.p_base[i])
        << ',' << format_sig9(rep.p_refined[i]) << ','
        << format_sig9(rep.rel_change[i]) << '\n';
  }
  finish(out, path);
}

void write_fit_report_csv(const std::string& path,
                          const std::vector<FitReportRow>& rows) {
  auto out = open_out(path);
  out << "temperature_C,slope,slope_stderr,intercept,sigma_e_cm2\n";
  for (const auto& r : rows) {
    out << format_sig9(r.temperature_c) << ',' << format_sig9(r.slope) << ','
        << format_sig9(r.slope_stderr) << ',' << format_sig9(r.intercept) << ','
        << format_sig9(r.sigma_e_cm2) << '\n';
  }
  finish(out, path);
}

void write_power_report_csv(const std::string& path, const PowerLawResult& fit) {
  auto out = open_out(path);
  out << "exponent,amplitude,exponent_stderr\n";
  out << format_sig9(fit.exponent) << ',' << format_sig9(fit.amplitude) << ','
      << format_sig9(fit.exponent_stderr) << '\n';
  finish(out, path);
}

std::vector<RateRecord> read_rate_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open input file: " + path);
  }
  std::vector<RateRecord> records;
  std::string raw, line;
  std::size_t line_no = 0;
  bool header_seen = false;
  bool has_power = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!data_line(raw, line)) continue;
    const auto fields = split_fields(line);
    if (!header_seen) {
      if (fields.size() == 2 && fields[0] == "r_solv_cps" &&
          fields[1] == "r_samp_cps") {
        has_power = false;
      } else if (fields.size() == 3 && fields[0] == "r_solv_cps" &&
                 fields[1] == "r_samp_cps" && fields[2] == "pump_power_mw") {
        has_power = true;
      } else {
        throw ParseError(
            "expected header 'r_solv_cps,r_samp_cps[,pump_power_mw]', got '" +
                line + "'",
            line_no);
      }
      header_seen = true;
      continue;
    }
    const std::size_t expected = has_power ? 3 : 2;
    if (fields.size() != expected) {
      throw ParseError("expected " + std::to_string(expected) +
                           " columns, got " + std::to_string(fields.size()),
                       line_no);
    }
    RateRecord rec;
    rec.r_solv_cps = parse_number(fields[0], line_no);
    rec.r_samp_cps = parse_number(fields[1], line_no);
    if (rec.r_solv_cps < 0.0 || rec.r_samp_cps < 0.0) {
      throw ParseError("count rates must be non-negative", line_no);
    }
    if (has_power) rec.pump_power_mw = parse_number(fields[2], line_no);
    records.push_back(rec);
  }
  if (!header_seen) {
    throw ParseError("missing header 'r_solv_cps,r_samp_cps[,pump_power_mw]'",
                     line_no == 0 ? 1 : line_no);
  }
  return records;
}

void read_power_csv(const std::string& path, std::vector<double>& power_mw,
                    std::vector<double>& rate_cps) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open input file: " + path);
  }
  power_mw.clear();
  rate_cps.clear();
  std::string raw, line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!data_line(raw, line)) continue;
    const auto fields = split_fields(line);
    if (!header_seen) {
      if (fields.size() != 2 || fields[0] != "power_mw" || fields[1] != "rate_cps") {
        throw ParseError("expected header 'power_mw,rate_cps', got '" + line + "'",
                         line_no);
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 2) {
      throw ParseError("expected 2 columns, got " + std::to_string(fields.size()),
                       line_no);
    }
    power_mw.push_back(parse_number(fields[0], line_no));
    rate_cps.push_back(parse_number(fields[1], line_no));
  }
  if (!header_seen) {
    throw ParseError("missing header 'power_mw,rate_cps'",
                     line_no == 0 ? 1 : line_no);
  }
}

}  // namespace etpa
