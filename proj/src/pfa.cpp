#include "casimir/pfa.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "casimir/matsubara.hpp"
#include "casimir/units.hpp"

namespace casimir::pfa {

namespace {

using boost::math::quadrature::exp_sinh;
using boost::math::quadrature::gauss_kronrod;

constexpr double pi = std::numbers::pi;

// ln(1 - r^2 e^{-t}), accurate both for t -> 0 with |r| = 1 and for large t.
double log_one_minus(double r, double t) {
  const double r2 = r * r;
  if (t < 1.0) return std::log((1.0 - r2) - r2 * std::expm1(-t));
  return std::log1p(-r2 * std::exp(-t));
}

// int_{2KL}^inf t sum_p ln(1 - r_p^2 e^{-t}) dt.
double wavevector_integral(double L, double K, const MaterialModel& model, double tol) {
  const bool perfect = is_perfect(model);
  const double eps = (K > 0.0 && !perfect) ? materials::permittivity(model, K) : 0.0;
  const double a = 2.0 * K * L;
  const auto integrand = [&](double s) {
    const double t = a + s;
    if (t == 0.0 || std::exp(-t) == 0.0) return 0.0;
    materials::FresnelPair r{-1.0, 1.0};
    if (!perfect) {
      r = K > 0.0 ? materials::fresnel_reduced(eps, t / a)
                  : materials::fresnel_zero_frequency(model, t / (2.0 * L));
    }
    return t * (log_one_minus(r.te, t) + log_one_minus(r.tm, t));
  };
  exp_sinh<double> integrator;
  return integrator.integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), tol);
}

double zero_temperature_energy(double L, const MaterialModel& model, double tol) {
  // Polar coordinates in (K, k): K = kappa cos psi, rho = 2 kappa L.
  const bool perfect = is_perfect(model);
  const auto angular = [&](double psi) {
    const double c = std::cos(psi);
    const auto radial = [&](double rho) {
      if (rho == 0.0 || std::exp(-rho) == 0.0) return 0.0;
      materials::FresnelPair r{-1.0, 1.0};
      if (!perfect) {
        const double K = rho * c / (2.0 * L);
        const auto eps = materials::permittivity_or_divergent(model, K);
        r = (eps && std::isfinite(*eps))
                ? materials::fresnel_reduced(*eps, 1.0 / c)
                : materials::fresnel_zero_frequency(model, rho * std::sin(psi) / (2.0 * L));
      }
      return rho * rho * (log_one_minus(r.te, rho) + log_one_minus(r.tm, rho));
    };
    exp_sinh<double> integrator;
    return std::sin(psi) *
           integrator.integrate(radial, 0.0, std::numeric_limits<double>::infinity(), tol);
  };
  const double outer = gauss_kronrod<double, 61>::integrate(angular, 0.0, 0.5 * pi, 15, tol);
  return outer / (32.0 * pi * pi * std::pow(L, 3));
}

}  // namespace

PlanePlaneResult lifshitz_energy_per_area(double L, double T, const MaterialModel& model,
                                          double tol) {
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("gap L must be > 0");
  if (!(T >= 0.0) || !std::isfinite(T)) throw std::invalid_argument("temperature must be >= 0");
  validate(model);
  const double quad_tol = std::max(1e-13, 1e-2 * tol);
  if (T == 0.0) return {zero_temperature_energy(L, model, quad_tol), 0, quad_tol};

  const double lambda = units::thermal_wavelength_um(T);
  matsubara::SeriesOptions series;
  series.tol = tol;
  const auto term = [&](int n) {
    const double K = units::matsubara_wavenumber(n, lambda);
    return matsubara::FrequencyTerm{wavevector_integral(L, K, model, quad_tol), 0.0, 0};
  };
  const matsubara::SeriesResult s = matsubara::matsubara_sum(term, L, lambda, series);
  return {s.log_det / (8.0 * pi * L * L * lambda), s.n_max, s.rel_error};
}

double pfa_force(double L, double R, double T, const MaterialModel& model, double tol) {
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("radius R must be > 0");
  return -2.0 * pi * R * lifshitz_energy_per_area(L, T, model, tol).energy_per_area;
}

double pfa_theta(double L, double T, const MaterialModel& model, double tol) {
  return lifshitz_energy_per_area(L, T, model, tol).energy_per_area /
         lifshitz_energy_per_area(L, 0.0, model, tol).energy_per_area;
}

}  // namespace casimir::pfa
