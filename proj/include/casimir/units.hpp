#pragma once

// Internal unit system: lengths in micrometres, frequencies as reduced
// wavenumbers xi/c in 1/um, energies in hbar*c/um. SI appears only at the
// boundary (CLI, CSV, and the *_si helpers below).

#include <numbers>

namespace casimir::units {

// CODATA 2018 (exact SI definitions for c and k_B; hbar from exact h).
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double boltzmann = 1.380649e-23;   // J/K

inline constexpr double metres_per_um = 1e-6;

/// hbar*c/um expressed in joules.
inline constexpr double energy_unit_J = hbar * speed_of_light / metres_per_um;
/// hbar*c/um^2 expressed in newtons.
inline constexpr double force_unit_N = energy_unit_J / metres_per_um;

/// Thermal wavelength hbar*c/(k_B T) in micrometres; +inf at T = 0.
double thermal_wavelength_um(double temperature_K);

/// Reduced Matsubara wavenumber xi_n/c = 2 pi n / lambda_T in 1/um.
double matsubara_wavenumber(int n, double thermal_wavelength);

}  // namespace casimir::units
