#pragma once

#include "casimir/materials.hpp"

namespace casimir::pfa {

/// Lifshitz free energy per unit area of two identical half-spaces at gap L
/// (um) and temperature T (K), in hbar c / um^3. T = 0 gives the
/// zero-temperature energy. Uses the same Matsubara policy as the sphere
/// pipeline: n = 0 at half weight, geometric tail bound.
struct PlanePlaneResult {
  double energy_per_area = 0.0;
  int n_max = 0;
  double rel_error = 0.0;
};

PlanePlaneResult lifshitz_energy_per_area(double L, double T, const MaterialModel& model,
                                          double tol = 1e-10);

/// Derjaguin force on a sphere of radius R: 2 pi R |E_pp(L, T)|, in
/// hbar c / um^2, attraction positive.
double pfa_force(double L, double R, double T, const MaterialModel& model, double tol = 1e-10);

/// theta_PFA = F_PFA(T) / F_PFA(0).
double pfa_theta(double L, double T, const MaterialModel& model, double tol = 1e-10);

}  // namespace casimir::pfa
