#include "core/sellmeier.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "core/errors.hpp"
#include "generated/sellmeier_data.hpp"

namespace etpa {

double SellmeierModel::index(double lambda_um, Temperature t) const {
  if (!(lambda_um >= lambda_min_um)) {
    throw std::domain_error("wavelength " + std::to_string(lambda_um) +
                            " um below minimum " + std::to_string(lambda_min_um) +
                            " um for coefficient set " + name);
  }
  if (!(lambda_um <= lambda_max_um)) {
    throw std::domain_error("wavelength " + std::to_string(lambda_um) +
                            " um above maximum " + std::to_string(lambda_max_um) +
                            " um for coefficient set " + name);
  }
  if (!(t.celsius >= temp_min_c)) {
    throw std::domain_error("temperature " + std::to_string(t.celsius) +
                            " C below minimum " + std::to_string(temp_min_c) +
                            " C for coefficient set " + name);
  }
  if (!(t.celsius <= temp_max_c)) {
    throw std::domain_error("temperature " + std::to_string(t.celsius) +
                            " C above maximum " + std::to_string(temp_max_c) +
                            " C for coefficient set " + name);
  }
  const double f = (t.celsius - t0_c) * (t.celsius + t1_c);
  const double l2 = lambda_um * lambda_um;
  const double q = a3 + b3 * f;
  const double n2 = a1 + b1 * f + (a2 + b2 * f) / (l2 - q * q) +
                    (a4 + b4 * f) / (l2 - a5 * a5) - a6 * l2;
  return std::sqrt(n2);
}

std::vector<SellmeierModel> parse_dispersion_table(std::string_view csv) {
  std::vector<SellmeierModel> models;
  std::istringstream stream{std::string(csv)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 17) {
      throw ParseError("dispersion table row needs 17 columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    SellmeierModel m;
    m.name = fields[0];
    double* slots[16] = {&m.a1, &m.a2, &m.a3, &m.a4, &m.a5, &m.a6,
                         &m.b1, &m.b2, &m.b3, &m.b4, &m.t0_c, &m.t1_c,
                         &m.lambda_min_um, &m.lambda_max_um,
                         &m.temp_min_c, &m.temp_max_c};
    for (int i = 0; i < 16; ++i) {
      try {
        *slots[i] = std::stod(fields[i + 1]);
      } catch (const std::exception&) {
        throw ParseError("bad number '" + fields[i + 1] + "' in dispersion table",
                         line_no);
      }
    }
    models.push_back(std::move(m));
  }
  return models;
}

namespace {

const std::vector<SellmeierModel>& embedded_table() {
  static const std::vector<SellmeierModel> table =
      parse_dispersion_table(kSellmeierTableCsv);
  return table;
}

}  // namespace

const SellmeierModel& dispersion_by_name(std::string_view name) {
  for (const auto& m : embedded_table()) {
    if (m.name == name) return m;
  }
  std::string known;
  for (const auto& m : embedded_table()) {
    if (!known.empty()) known += ", ";
    known += m.name;
  }
  throw std::invalid_argument("unknown dispersion set '" + std::string(name) +
                              "' (known: " + known + ")");
}

std::vector<std::string> dispersion_names() {
  std::vector<std::string> names;
  for (const auto& m : embedded_table()) names.push_back(m.name);
  return names;
}

}  // namespace etpa
