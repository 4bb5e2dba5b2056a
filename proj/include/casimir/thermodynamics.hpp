#pragma once

#include "casimir/geometry.hpp"
#include "casimir/materials.hpp"

namespace casimir {

/// Temperature in kelvin with the derived thermal wavelength in um.
struct ThermalState {
  double T = 0.0;
  double thermal_wavelength = 0.0;  // hbar c / (k_B T), +inf at T = 0

  static ThermalState at(double temperature_K);
};

struct ConvergenceReport {
  int lmax = 0;
  int m_max = 0;
  int n_max = 0;        // Matsubara cutoff, or frequency nodes at T = 0
  int quad_order = 0;
  double rel_error = 0.0;
};

/// Numerical knobs. Zero / negative values mean "choose automatically";
/// the frozen_* fields pin a truncation so that neighbouring evaluations
/// (finite differences, ratios) see identical discretizations.
struct SolverOptions {
  double tol = 1e-6;
  int lmax = 0;
  int quad_order = 0;
  int frozen_n_max = -1;
  int frozen_m_max = -1;
  int workers = 1;
  bool flip_electric_sign = false;  // mutation hook for the validation suite
};

/// Energies in hbar c / um, forces in hbar c / um^2, entropy in
/// (hbar c / um) / K. Forces are reported attraction-positive:
/// F = d(free energy)/dL, the negative of the conventional -dF/dL.
struct ThermalResult {
  double free_energy = 0.0;
  double force = 0.0;
  ConvergenceReport report;
};

struct EntropyResult {
  double entropy = 0.0;
  double error = 0.0;
  ConvergenceReport report;
};

namespace thermo {

/// Multipole cutoff used when options.lmax == 0.
int default_lmax(const Geometry& geom);

/// Sum over m of ln det(1 - M^(m)) (m and -m both counted) at one reduced
/// wavenumber K >= 0, with its derivative along L + R when requested.
struct FrequencyContribution {
  double log_det = 0.0;
  double derivative = 0.0;
  int m_max = 0;
};
FrequencyContribution frequency_contribution(const Geometry& geom, const MaterialModel& model,
                                             double K, const SolverOptions& options,
                                             bool with_derivative);

ThermalResult free_energy(const Geometry& geom, const MaterialModel& model, double T,
                          const SolverOptions& options = {});

/// Free energy and force from the same blocks.
ThermalResult force(const Geometry& geom, const MaterialModel& model, double T,
                    const SolverOptions& options = {});

/// T = 0 energy and force: (1/2 pi) integral over K of the m-summed log
/// determinant. Gauss-Legendre on a mapped variable, doubled until stable;
/// report.n_max is the final node count.
ThermalResult zero_temperature(const Geometry& geom, const MaterialModel& model,
                               const SolverOptions& options = {});

/// Same node count as a previous zero_temperature() call.
ThermalResult zero_temperature_fixed(const Geometry& geom, const MaterialModel& model,
                                     int nodes, const SolverOptions& options);

/// theta = F(T) / F(0) with matched lmax and quadrature order.
double theta_ratio(const Geometry& geom, const MaterialModel& model, double T,
                   const SolverOptions& options = {});

/// S = -dF/dT by Richardson-corrected central differences, step 1e-3 T,
/// with all truncations frozen at their values for T.
EntropyResult entropy(const Geometry& geom, const MaterialModel& model, double T,
                      const SolverOptions& options = {});

}  // namespace thermo
}  // namespace casimir
