#include "core/fitting.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "core/constants.hpp"
#include "core/errors.hpp"

namespace etpa {

AbsorptionRates absorption_rates(const RateDataset& dataset) {
  if (dataset.records.empty()) {
    throw std::invalid_argument("absorption_rates: empty dataset");
  }
  AbsorptionRates out;
  out.points.reserve(dataset.records.size());
  for (const auto& rec : dataset.records) {
    const double r_abs = rec.r_solv_cps - rec.r_samp_cps;
    if (r_abs < 0.0) ++out.negative_count;
    out.points.push_back({rec.r_solv_cps, r_abs});
  }
  return out;
}

LineFit linear_slope(std::span<const double> x, std::span<const double> y,
                     bool through_origin) {
  const std::size_t n = x.size();
  if (n != y.size()) {
    throw std::invalid_argument("linear_slope: x/y length mismatch");
  }
  if (n < 2) {
    throw std::invalid_argument("linear_slope: need at least 2 points, got " +
                                std::to_string(n));
  }

  if (through_origin) {
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sxx += x[i] * x[i];
      sxy += x[i] * y[i];
    }
    if (sxx == 0.0) {
      throw SingularFitError("linear_slope: all abscissae are zero");
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = 0.0;
    if (n >= 2) {
      double ssr = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - fit.slope * x[i];
        ssr += r * r;
      }
      const auto dof = static_cast<double>(n - 1);
      fit.slope_stderr = std::sqrt(ssr / dof / sxx);
    }
    return fit;
  }

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) {
    throw SingularFitError("linear_slope: abscissae are all equal");
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n >= 3) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.slope * x[i] - fit.intercept;
      ssr += r * r;
    }
    const auto dof = static_cast<double>(n - 2);
    fit.slope_stderr = std::sqrt(ssr / dof / sxx);
  }
  return fit;
}

double cross_section_cm2(double slope, double concentration_mol_l,
                         double path_length_mm) {
  if (!std::isfinite(slope)) {
    throw std::invalid_argument("cross_section: slope must be finite");
  }
  if (!(concentration_mol_l > 0.0)) {
    throw std::invalid_argument("cross_section: concentration must be positive");
  }
  if (!(path_length_mm > 0.0)) {
    throw std::invalid_argument("cross_section: path length must be positive");
  }
  const double c_mol_cm3 = concentration_mol_l / 1000.0;
  const double l_cm = path_length_mm / 10.0;
  return slope / (c_mol_cm3 * l_cm * kAvogadro);
}

PowerLawResult power_law_exponent(std::span<const double> x,
                                  std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size()) {
    throw std::invalid_argument("power_law: x/y length mismatch");
  }
  if (n < 3) {
    throw std::invalid_argument("power_law: need at least 3 points, got " +
                                std::to_string(n));
  }
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::domain_error("power_law: values must be strictly positive (pair " +
                              std::to_string(i) + ")");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const LineFit fit = linear_slope(lx, ly, false);
  return {fit.slope, std::exp(fit.intercept), fit.slope_stderr};
}

std::array<double, 4> cubic_trend(std::span<const double> t,
                                  std::span<const double> y) {
  const std::size_t n = t.size();
  if (n != y.size()) {
    throw std::invalid_argument("cubic_trend: t/y length mismatch");
  }
  if (n < 4) {
    throw std::invalid_argument("cubic_trend: need at least 4 points, got " +
                                std::to_string(n));
  }

  // Normal equations on the mean-centered abscissa, then expanded back to
  // the raw basis. Centering keeps the 4x4 system well conditioned for
  // narrow temperature windows like 35..38 C.
  double mean = 0.0;
  for (double v : t) mean += v;
  mean /= static_cast<double>(n);

  double s[7] = {0.0};  // power sums of (t - mean)
  double r[4] = {0.0};  // moments of y against (t - mean)^k
  for (std::size_t i = 0; i < n; ++i) {
    const double u = t[i] - mean;
    double p = 1.0;
    for (int k = 0; k <= 6; ++k) {
      if (k <= 3) r[k] += y[i] * p;
      s[k] += p;
      p *= u;
    }
  }

  double m[4][5];
  for (int row = 0; row < 4; ++row) {
    for (int col = 0; col < 4; ++col) m[row][col] = s[row + col];
    m[row][4] = r[row];
  }
  // Gaussian elimination with partial pivoting
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 4; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    }
    if (m[pivot][col] == 0.0) {
      throw SingularFitError("cubic_trend: degenerate abscissae");
    }
    if (pivot != col) {
      for (int k = col; k < 5; ++k) std::swap(m[pivot][k], m[col][k]);
    }
    for (int row = col + 1; row < 4; ++row) {
      const double f = m[row][col] / m[col][col];
      for (int k = col; k < 5; ++k) m[row][k] -= f * m[col][k];
    }
  }
  double a[4];  // centered coefficients, ascending degree
  for (int row = 3; row >= 0; --row) {
    double v = m[row][4];
    for (int k = row + 1; k < 4; ++k) v -= m[row][k] * a[k];
    a[row] = v / m[row][row];
  }

  // p(t) = sum_k a_k (t - mean)^k -> raw coefficients via binomial expansion
  const double mm = -mean;
  const double c0 = a[0] + a[1] * mm + a[2] * mm * mm + a[3] * mm * mm * mm;
  const double c1 = a[1] + 2.0 * a[2] * mm + 3.0 * a[3] * mm * mm;
  const double c2 = a[2] + 3.0 * a[3] * mm;
  const double c3 = a[3];
  return {c3, c2, c1, c0};
}

}  // namespace etpa
