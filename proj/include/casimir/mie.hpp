#pragma once

#include <vector>

#include "casimir/materials.hpp"

namespace casimir::mie {

/// Mie coefficients at imaginary frequency in the sign convention where
/// a_1 -> -2 x^3/3 and b_1 -> x^3/3 for a perfectly reflecting sphere.
struct MieCoefficients {
  double a;  // electric
  double b;  // magnetic
};

/// Sign-free sphere reflection strengths rho_E = (-1)^l a_l and
/// rho_M = (-1)^(l+1) b_l, both >= 0 for passive spheres. Stored as natural
/// logarithms (-inf for an exact zero) because they scale like x^(2l+1).
/// Index l = 1..lmax; entry 0 is unused.
struct SphereReflection {
  std::vector<double> log_electric;
  std::vector<double> log_magnetic;
};

/// Reduced wavenumber K = xi/c (1/um), sphere radius R (um), size parameter
/// x = K R > 0.
SphereReflection sphere_reflection(const MaterialModel& model, int lmax,
                                   double K, double R);

/// Leading low-frequency coefficients: rho_{l,P} = c_{l,P} x^(2l+1) + ...
/// Returned as log c (with -inf where the coefficient vanishes, i.e. the
/// magnetic Drude channel).
SphereReflection sphere_reflection_static(const MaterialModel& model, int lmax,
                                          double R);

MieCoefficients mie_ab(const MaterialModel& model, int l, double K, double R);

/// Coefficients (abar_l, bbar_l) of x^(2l+1) in the low-frequency expansion,
/// in the same sign convention as mie_ab().
MieCoefficients mie_ab_zero_frequency(const MaterialModel& model, int l,
                                      double R);

}  // namespace casimir::mie
