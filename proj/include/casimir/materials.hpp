#pragma once

#include <optional>
#include <string>
#include <variant>

namespace casimir {

/// Ideal mirror: r_TE = -1, r_TM = +1 at every frequency.
struct PerfectReflector {};

/// Lossless plasma model, eps(i xi) = 1 + omega_P^2 / xi^2.
struct Plasma {
  double plasma_wavelength;  // lambda_P = 2 pi c / omega_P, um
};

/// Drude model, eps(i xi) = 1 + omega_P^2 / (xi (xi + gamma)).
struct Drude {
  double plasma_wavelength;       // lambda_P, um
  double relaxation_wavelength;   // lambda_gamma = 2 pi c / gamma, um
};

using MaterialModel = std::variant<PerfectReflector, Plasma, Drude>;

/// Throws std::invalid_argument when a wavelength is not finite and positive.
void validate(const MaterialModel& model);

std::string describe(const MaterialModel& model);
bool is_perfect(const MaterialModel& model);

namespace materials {

/// omega_P / c in 1/um.
double plasma_wavenumber(double plasma_wavelength);

/// Reduced dc conductivity sigma_0 / c = omega_P^2 / (gamma c) in 1/um.
double reduced_conductivity(const Drude& model);

/// eps(i xi) at reduced wavenumber K = xi/c > 0. Rejects K <= 0 and the
/// perfect reflector (which never goes through a permittivity).
double permittivity(const MaterialModel& model, double K);

/// Same as permittivity() but admits K = 0: returns std::nullopt where
/// eps diverges (Plasma and Drude at zero frequency).
std::optional<double> permittivity_or_divergent(const MaterialModel& model,
                                                double K);

struct FresnelPair {
  double te;
  double tm;
};

/// Plane-mirror Fresnel amplitudes at imaginary frequency for reduced
/// wavenumber K = xi/c and transverse wavevector k (both 1/um, not both 0).
/// K = 0 is routed to fresnel_zero_frequency().
FresnelPair fresnel(const MaterialModel& model, double K, double k);

/// Exact xi -> 0 limits of the Fresnel amplitudes at fixed k > 0.
FresnelPair fresnel_zero_frequency(const MaterialModel& model, double k);

/// Fresnel amplitudes in terms of eps and u = kappa/K >= 1. This is the form
/// used inside the quadratures, where u is the natural variable.
FresnelPair fresnel_reduced(double eps, double u);

}  // namespace materials
}  // namespace casimir
