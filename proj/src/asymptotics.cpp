#include "casimir/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "casimir/units.hpp"

namespace casimir::asymptotics {

namespace {

constexpr double series_switch = 1e-2;
constexpr double pi = std::numbers::pi;

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite and > 0");
  }
}

double inverse_lambda(double T) {
  check_positive(T, "temperature");
  return 1.0 / units::thermal_wavelength_um(T);
}

}  // namespace

double phi(double nu) {
  check_positive(nu, "nu");
  if (nu < series_switch) {
    const double n2 = nu * nu;
    const double n4 = n2 * n2;
    return 1.5 / nu *
           (1.0 + n4 * (-1.0 / 135.0 + n2 * (4.0 / 945.0 + n2 * (-1.0 / 945.0 + n2 * 8.0 / 40095.0))));
  }
  // Divided through by sinh^3 so that large nu cannot overflow.
  const double inv_s2 = 1.0 / std::pow(std::sinh(nu), 2);
  return 0.5 * (nu * inv_s2 + (1.0 + nu * nu * inv_s2) / std::tanh(nu));
}

double phi_prime(double nu) {
  check_positive(nu, "nu");
  // -nu^2 (cosh 2nu + 2) / (2 sinh^4 nu), with cosh 2nu = 1 + 2 sinh^2 nu.
  const double inv_s2 = 1.0 / std::pow(std::sinh(nu), 2);
  return -0.5 * nu * nu * inv_s2 * (3.0 * inv_s2 + 2.0);
}

double low_temperature_series(double nu) {
  const double n2 = nu * nu;
  return 1.0 - n2 * n2 / 135.0 + 4.0 * n2 * n2 * n2 / 945.0;
}

double reduced_distance(double L, double T) {
  check_positive(L, "L");
  return 2.0 * pi * L * inverse_lambda(T);
}

double free_energy_perfect_dipole(double L, double R, double T) {
  check_positive(R, "R");
  const double nu = reduced_distance(L, T);
  return -0.75 * std::pow(R, 3) * inverse_lambda(T) / std::pow(L, 3) * phi(nu);
}

double energy_perfect_dipole_zero_temperature(double L, double R) {
  check_positive(L, "L");
  check_positive(R, "R");
  return -9.0 * std::pow(R, 3) / (16.0 * pi * std::pow(L, 4));
}

double force_perfect_dipole(double L, double R, double T) {
  check_positive(R, "R");
  const double nu = reduced_distance(L, T);
  return 0.75 * std::pow(R, 3) * inverse_lambda(T) / std::pow(L, 4) *
         (3.0 * phi(nu) - nu * phi_prime(nu));
}

double entropy_perfect_dipole(double L, double R, double T) {
  check_positive(R, "R");
  const double nu = reduced_distance(L, T);
  const double kb = units::boltzmann / units::energy_unit_J;
  return 0.75 * kb * std::pow(R / L, 3) * (phi(nu) + nu * phi_prime(nu));
}

double theta_dipole(double nu) { return nu * (3.0 * phi(nu) - nu * phi_prime(nu)) / 6.0; }

double plasma_bracket(double alpha) {
  check_positive(alpha, "alpha");
  if (alpha < 0.1) {
    // Laurent series of coth removes the 1/alpha^2 cancellation.
    const double a2 = alpha * alpha;
    return 2.0 / 3.0 +
           a2 * (1.0 / 45.0 +
                 a2 * (-2.0 / 945.0 +
                       a2 * (1.0 / 4725.0 + a2 * (-2.0 / 93555.0 + a2 * 1382.0 / 638512875.0))));
  }
  return 1.0 + 1.0 / (alpha * alpha) - 1.0 / (std::tanh(alpha) * alpha);
}

double free_energy_plasma_dipole(double L, double R, double T, double plasma_wavelength) {
  check_positive(L, "L");
  check_positive(R, "R");
  check_positive(plasma_wavelength, "plasma wavelength");
  const double alpha = 2.0 * pi * R / plasma_wavelength;
  return -0.375 * std::pow(R, 3) * inverse_lambda(T) / std::pow(L, 3) * plasma_bracket(alpha);
}

double free_energy_drude_dipole(double L, double R, double T) {
  check_positive(L, "L");
  check_positive(R, "R");
  return -0.25 * std::pow(R, 3) * inverse_lambda(T) / std::pow(L, 3);
}

}  // namespace casimir::asymptotics
