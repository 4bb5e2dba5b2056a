#pragma once

// Closed-form large-distance (dipole) results for a small sphere, L >> R.
// Lengths in um, temperatures in K, energies in hbar c / um, forces in
// hbar c / um^2 (attraction positive), entropies in (hbar c / um) / K.

namespace casimir::asymptotics {

/// phi(nu) = (nu sinh nu + cosh nu (nu^2 + sinh^2 nu)) / (2 sinh^3 nu), nu > 0.
double phi(double nu);

/// d phi / d nu.
double phi_prime(double nu);

/// Low-temperature factor 1 - nu^4/135 + 4 nu^6/945.
double low_temperature_series(double nu);

/// nu = 2 pi L / lambda_T.
double reduced_distance(double L, double T);

double free_energy_perfect_dipole(double L, double R, double T);
/// T = 0 limit, -9 R^3 / (16 pi L^4).
double energy_perfect_dipole_zero_temperature(double L, double R);
double force_perfect_dipole(double L, double R, double T);
double entropy_perfect_dipole(double L, double R, double T);

/// F(T)/F(0) in the dipole limit: nu (3 phi - nu phi') / 6.
double theta_dipole(double nu);

/// 1 + 1/alpha^2 - coth(alpha)/alpha, alpha = 2 pi R / lambda_P.
double plasma_bracket(double alpha);

double free_energy_plasma_dipole(double L, double R, double T, double plasma_wavelength);
double free_energy_drude_dipole(double L, double R, double T);

}  // namespace casimir::asymptotics
