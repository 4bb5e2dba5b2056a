#include "casimir/thermodynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "casimir/matsubara.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/roundtrip.hpp"
#include "casimir/units.hpp"

namespace casimir {

ThermalState ThermalState::at(double temperature_K) {
  if (!(temperature_K >= 0.0) || !std::isfinite(temperature_K)) {
    throw std::invalid_argument("temperature must be finite and >= 0");
  }
  return {temperature_K, units::thermal_wavelength_um(temperature_K)};
}

namespace thermo {

namespace {

// Relative size of the last m-contribution at which the m-sum stops.
constexpr double m_cutoff = 1e-8;

constexpr int first_frequency_nodes = 40;
constexpr int max_frequency_nodes = 2560;

int resolved_lmax(const Geometry& geom, const SolverOptions& options) {
  return options.lmax > 0 ? options.lmax : default_lmax(geom);
}

ConvergenceReport base_report(const Geometry& geom, const SolverOptions& options) {
  ConvergenceReport r;
  r.lmax = resolved_lmax(geom, options);
  r.quad_order = roundtrip::resolve_quadrature_order({options.quad_order}, r.lmax);
  return r;
}

void check_tolerance(double tol) {
  if (!(tol > 0.0) || !(tol < 1.0)) throw std::invalid_argument("tolerance must lie in (0, 1)");
}

ThermalResult thermal_sum(const Geometry& geom, const MaterialModel& model, double T,
                          const SolverOptions& options, bool with_force) {
  validate(geom);
  validate(model);
  check_tolerance(options.tol);
  if (!(T > 0.0)) throw std::invalid_argument("finite-temperature sum needs T > 0");
  const double lambda = units::thermal_wavelength_um(T);

  matsubara::SeriesOptions series;
  series.tol = options.tol;
  series.frozen_n_max = options.frozen_n_max;
  series.workers = options.workers;
  series.track_derivative = with_force;
  const auto term = [&](int n) {
    const auto c = frequency_contribution(geom, model, units::matsubara_wavenumber(n, lambda),
                                          options, with_force);
    return matsubara::FrequencyTerm{c.log_det, c.derivative, c.m_max};
  };
  const matsubara::SeriesResult s = matsubara::matsubara_sum(term, geom.L, lambda, series);

  ThermalResult out;
  out.free_energy = s.log_det / lambda;
  out.force = with_force ? s.derivative / lambda : 0.0;
  out.report = base_report(geom, options);
  out.report.n_max = s.n_max;
  out.report.m_max = s.m_max;
  out.report.rel_error = s.rel_error;
  return out;
}

struct IntegralValue {
  double energy;
  double force;
  int m_max;
};

// (1/2 pi) int_0^inf dK f(K) with K = K_s (v / (1 - v))^2, v in (0, 1).
IntegralValue frequency_integral(const Geometry& geom, const MaterialModel& model,
                                 int nodes, const SolverOptions& options, bool with_force) {
  const auto rule = quadrature::gauss_legendre(nodes);
  const double scale = 1.0 / (2.0 * geom.L);
  const auto values = matsubara::parallel_map(
      rule->nodes.size(), options.workers, [&](std::size_t j) {
        const double v = 0.5 * (rule->nodes[j] + 1.0);
        const double q = v / (1.0 - v);
        const double K = scale * q * q;
        const double jacobian = 0.5 * rule->weights[j] * scale * 2.0 * v / std::pow(1.0 - v, 3);
        const auto c = frequency_contribution(geom, model, K, options, with_force);
        return std::array<double, 3>{jacobian * c.log_det, jacobian * c.derivative,
                                     static_cast<double>(c.m_max)};
      });
  std::vector<double> e(values.size()), f(values.size());
  int m_max = 0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    e[j] = values[j][0];
    f[j] = values[j][1];
    m_max = std::max(m_max, static_cast<int>(values[j][2]));
  }
  const double norm = 1.0 / (2.0 * std::numbers::pi);
  return {norm * matsubara::pairwise_sum(e), norm * matsubara::pairwise_sum(f), m_max};
}

}  // namespace

int default_lmax(const Geometry& geom) {
  validate(geom);
  const double ratio = geom.R / geom.L;
  return std::max(4, static_cast<int>(std::ceil(5.0 * ratio)) + 6);
}

FrequencyContribution frequency_contribution(const Geometry& geom, const MaterialModel& model,
                                             double K, const SolverOptions& options,
                                             bool with_derivative) {
  const int lmax = resolved_lmax(geom, options);
  const roundtrip::RoundTripOperator op(geom, model, lmax, K, {options.quad_order},
                                        options.flip_electric_sign);
  const bool frozen = options.frozen_m_max >= 0;
  const int m_limit = frozen ? std::min(options.frozen_m_max, lmax) : lmax;
  FrequencyContribution out;
  for (int m = 0; m <= m_limit; ++m) {
    const roundtrip::RoundTripBlock b = op.block(m, with_derivative);
    const roundtrip::LogDetWithDerivative ld =
        with_derivative ? roundtrip::log_det_one_minus_with_derivative(b)
                        : roundtrip::LogDetWithDerivative{roundtrip::log_det_one_minus(b), 0.0};
    const double weight = m == 0 ? 1.0 : 2.0;
    out.log_det += weight * ld.value;
    out.derivative += weight * ld.derivative;
    out.m_max = m;
    if (frozen || m < 2) continue;
    const bool energy_done = std::abs(weight * ld.value) <= m_cutoff * std::abs(out.log_det);
    const bool force_done = !with_derivative ||
                            std::abs(weight * ld.derivative) <= m_cutoff * std::abs(out.derivative);
    if (energy_done && force_done) break;
  }
  return out;
}

ThermalResult free_energy(const Geometry& geom, const MaterialModel& model, double T,
                          const SolverOptions& options) {
  return thermal_sum(geom, model, T, options, false);
}

ThermalResult force(const Geometry& geom, const MaterialModel& model, double T,
                    const SolverOptions& options) {
  return thermal_sum(geom, model, T, options, true);
}

ThermalResult zero_temperature_fixed(const Geometry& geom, const MaterialModel& model,
                                     int nodes, const SolverOptions& options) {
  validate(geom);
  validate(model);
  if (nodes < 1) throw std::invalid_argument("frequency node count must be >= 1");
  const IntegralValue v = frequency_integral(geom, model, nodes, options, true);
  ThermalResult out;
  out.free_energy = v.energy;
  out.force = v.force;
  out.report = base_report(geom, options);
  out.report.n_max = nodes;
  out.report.m_max = v.m_max;
  return out;
}

ThermalResult zero_temperature(const Geometry& geom, const MaterialModel& model,
                               const SolverOptions& options) {
  validate(geom);
  validate(model);
  check_tolerance(options.tol);
  int nodes = first_frequency_nodes;
  IntegralValue prev = frequency_integral(geom, model, nodes, options, true);
  for (;;) {
    const int next_nodes = 2 * nodes;
    const IntegralValue cur = frequency_integral(geom, model, next_nodes, options, true);
    const double err = std::max(std::abs(cur.energy - prev.energy) / std::abs(cur.energy),
                                std::abs(cur.force - prev.force) / std::abs(cur.force));
    nodes = next_nodes;
    if (err <= options.tol || nodes >= max_frequency_nodes) {
      if (!(err <= options.tol)) {
        throw std::runtime_error("zero-temperature frequency integral did not converge");
      }
      ThermalResult out;
      out.free_energy = cur.energy;
      out.force = cur.force;
      out.report = base_report(geom, options);
      out.report.n_max = nodes;
      out.report.m_max = std::max(cur.m_max, prev.m_max);
      out.report.rel_error = err;
      return out;
    }
    prev = cur;
  }
}

double theta_ratio(const Geometry& geom, const MaterialModel& model, double T,
                   const SolverOptions& options) {
  SolverOptions matched = options;
  matched.lmax = resolved_lmax(geom, options);
  matched.quad_order = roundtrip::resolve_quadrature_order({options.quad_order}, matched.lmax);
  const ThermalResult hot = force(geom, model, T, matched);
  const ThermalResult cold = zero_temperature(geom, model, matched);
  return hot.force / cold.force;
}

EntropyResult entropy(const Geometry& geom, const MaterialModel& model, double T,
                      const SolverOptions& options) {
  if (!(T > 0.0)) throw std::invalid_argument("entropy needs T > 0");
  SolverOptions frozen = options;
  frozen.lmax = resolved_lmax(geom, options);
  frozen.quad_order = roundtrip::resolve_quadrature_order({options.quad_order}, frozen.lmax);
  const ThermalResult base = free_energy(geom, model, T, frozen);
  // The cutoff scales with T; the slightly hotter side needs marginally fewer
  // terms, so the base cutoff is safe on both sides of the stencil.
  frozen.frozen_n_max = base.report.n_max;
  frozen.frozen_m_max = base.report.m_max;

  const double h = 1e-3 * T;
  const auto central = [&](double step) {
    const double up = free_energy(geom, model, T + step, frozen).free_energy;
    const double down = free_energy(geom, model, T - step, frozen).free_energy;
    return (up - down) / (2.0 * step);
  };
  const double d1 = central(h);
  const double d2 = central(0.5 * h);
  const double richardson = (4.0 * d2 - d1) / 3.0;

  EntropyResult out;
  out.entropy = -richardson;
  out.error = std::abs(richardson - d2);
  out.report = base.report;
  return out;
}

}  // namespace thermo
}  // namespace casimir
