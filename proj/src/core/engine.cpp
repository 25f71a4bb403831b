#include "core/engine.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "core/errors.hpp"

namespace etpa {

std::complex<double> inner_amplitude(const MoleculeModel& model, const JsaGrid& jsa,
                                     std::size_t omega0_index) {
  if (omega0_index >= jsa.n_sum()) {
    throw std::invalid_argument("inner_amplitude: omega0 index out of range");
  }
  const double w0 = jsa.omega0_axis[omega0_index];
  const std::size_t nd = jsa.n_diff();
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t j = 0; j < nd; ++j) {
    const double nu = jsa.nu_axis[j];
    const double wi = 0.5 * (w0 + nu);
    const double ws = 0.5 * (w0 - nu);
    const double w = (j == 0 || j == nd - 1) ? 0.5 : 1.0;
    acc += w * response_sum(model, wi, ws) * jsa.at(omega0_index, j);
  }
  return acc * (0.5 * jsa.nu_axis.spacing());
}

double probability(const MoleculeModel& model, const JsaGrid& jsa) {
  model.validate();
  const std::size_t n0 = jsa.n_sum();
  double acc = 0.0;
  for (std::size_t i = 0; i < n0; ++i) {
    const double w = (i == 0 || i == n0 - 1) ? 0.5 : 1.0;
    acc += w * lorentzian_lineshape(model, jsa.omega0_axis[i]) *
           std::norm(inner_amplitude(model, jsa, i));
  }
  return acc * jsa.omega0_axis.spacing();
}

ProbabilityCurve temperature_sweep(const MoleculeModel& model,
                                   const CrystalSpec& crystal, const PumpSpec& pump,
                                   double t_lo_c, double t_hi_c, std::size_t n_t,
                                   const GridConfig& grid) {
  model.validate();
  if (n_t == 0) {
    throw std::invalid_argument("temperature_sweep: need at least one temperature");
  }
  if (n_t == 1) {
    if (t_lo_c != t_hi_c) {
      throw std::invalid_argument("temperature_sweep: single point requires t_lo == t_hi");
    }
  } else if (!(t_lo_c < t_hi_c)) {
    throw std::invalid_argument("temperature_sweep: requires t_lo < t_hi");
  }

  ProbabilityCurve curve;
  curve.grid = grid;
  curve.fingerprint = model_fingerprint(model, crystal, pump, grid);
  curve.points.reserve(n_t);
  const double step = (n_t > 1) ? (t_hi_c - t_lo_c) / static_cast<double>(n_t - 1) : 0.0;
  for (std::size_t k = 0; k < n_t; ++k) {
    const double t_c = (k == n_t - 1 && n_t > 1)
                           ? t_hi_c
                           : t_lo_c + static_cast<double>(k) * step;
    try {
      const JsaGrid jsa = build_jsa(crystal, pump, {t_c}, grid);
      curve.points.push_back({t_c, probability(model, jsa)});
    } catch (const std::domain_error& e) {
      throw std::domain_error("at sweep temperature " + std::to_string(t_c) +
                              " C: " + e.what());
    }
  }
  return curve;
}

double optimal_temperature(const ProbabilityCurve& curve, bool refine) {
  const auto& pts = curve.points;
  if (pts.empty()) {
    throw std::invalid_argument("optimal_temperature: empty curve");
  }
  if (refine && pts.size() < 3) {
    throw std::invalid_argument("optimal_temperature: refine needs at least 3 points");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].probability > pts[best].probability) best = i;  // ties -> lower T
  }
  if (!refine || best == 0 || best == pts.size() - 1) {
    return pts[best].temperature_c;
  }
  const double y1 = pts[best - 1].probability;
  const double y2 = pts[best].probability;
  const double y3 = pts[best + 1].probability;
  const double denom = y1 - 2.0 * y2 + y3;
  if (denom == 0.0) return pts[best].temperature_c;
  const double h = pts[best].temperature_c - pts[best - 1].temperature_c;
  return pts[best].temperature_c + 0.5 * h * (y1 - y3) / denom;
}

double detuning_penalty(const MoleculeModel& model, const CrystalSpec& crystal,
                        const PumpSpec& pump, Temperature t, const GridConfig& grid,
                        std::size_t response_map_n) {
  model.validate();
  const JsaGrid jsa = build_jsa(crystal, pump, t, grid);
  const double p_actual = probability(model, jsa);

  const ResponseGrid map =
      response_map(model, grid.lambda_min_nm, grid.lambda_max_nm,
                   grid.lambda_min_nm, grid.lambda_max_nm, response_map_n);
  const ResponseArgmax peak = response_argmax(map);
  const double delta = peak.omega_i_rad_s + peak.omega_s_rad_s - pump.omega_p0_rad_s;

  const double p_reference = probability(model, translated(jsa, delta));
  if (!(p_reference > 0.0)) {
    throw UndefinedRatioError("detuning_penalty: reference probability vanishes");
  }
  return 1.0 - p_actual / p_reference;
}

ConvergenceReport convergence_check(const MoleculeModel& model,
                                    const CrystalSpec& crystal,
                                    const PumpSpec& pump, double t_lo_c,
                                    double t_hi_c, std::size_t n_t,
                                    const GridConfig& grid) {
  const ProbabilityCurve base = temperature_sweep(model, crystal, pump, t_lo_c,
                                                  t_hi_c, n_t, grid);
  const ProbabilityCurve fine = temperature_sweep(model, crystal, pump, t_lo_c,
                                                  t_hi_c, n_t, grid.doubled());
  ConvergenceReport rep;
  rep.max_rel_change = 0.0;
  for (std::size_t i = 0; i < base.points.size(); ++i) {
    const double p1 = base.points[i].probability;
    const double p2 = fine.points[i].probability;
    const double ref = std::max(std::abs(p1), std::abs(p2));
    const double rel = (ref == 0.0) ? 0.0 : std::abs(p2 - p1) / ref;
    rep.temperature_c.push_back(base.points[i].temperature_c);
    rep.p_base.push_back(p1);
    rep.p_refined.push_back(p2);
    rep.rel_change.push_back(rel);
    rep.max_rel_change = std::max(rep.max_rel_change, rel);
  }
  return rep;
}

namespace {

void hash_value(std::uint64_t& h, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  for (const char* p = buf; *p; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 1099511628211ULL;  // FNV-1a
  }
  h ^= static_cast<unsigned char>('|');
  h *= 1099511628211ULL;
}

void hash_string(std::uint64_t& h, const std::string& s) {
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  h ^= static_cast<unsigned char>('|');
  h *= 1099511628211ULL;
}

}  // namespace

std::uint64_t model_fingerprint(const MoleculeModel& model,
                                const CrystalSpec& crystal, const PumpSpec& pump,
                                const GridConfig& grid) {
  std::uint64_t h = 14695981039346656037ULL;
  hash_value(h, model.omega_f_rad_s);
  hash_value(h, model.gamma_f_rad_s);
  for (const auto& st : model.states) {
    hash_value(h, st.omega_rad_s);
    hash_value(h, st.gamma_rad_s);
    hash_value(h, st.dipole_product);
  }
  hash_value(h, crystal.length_m);
  hash_value(h, crystal.poling_period_m);
  hash_value(h, crystal.thermal_expansion ? 1.0 : 0.0);
  hash_string(h, crystal.sellmeier.name);
  for (double v : {crystal.sellmeier.a1, crystal.sellmeier.a2, crystal.sellmeier.a3,
                   crystal.sellmeier.a4, crystal.sellmeier.a5, crystal.sellmeier.a6,
                   crystal.sellmeier.b1, crystal.sellmeier.b2, crystal.sellmeier.b3,
                   crystal.sellmeier.b4, crystal.sellmeier.t0_c, crystal.sellmeier.t1_c}) {
    hash_value(h, v);
  }
  hash_value(h, pump.omega_p0_rad_s);
  hash_value(h, pump.sigma_rad_s);
  hash_value(h, static_cast<double>(grid.n_sum));
  hash_value(h, grid.sum_half_width_sigmas);
  hash_value(h, static_cast<double>(grid.n_diff));
  hash_value(h, grid.lambda_min_nm);
  hash_value(h, grid.lambda_max_nm);
  return h;
}

}  // namespace etpa
