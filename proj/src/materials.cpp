#include "casimir/materials.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "casimir/units.hpp"

namespace casimir {

namespace units {

double thermal_wavelength_um(double temperature_K) {
  if (!(temperature_K >= 0.0)) {
    throw std::invalid_argument("temperature must be >= 0");
  }
  if (temperature_K == 0.0) return std::numeric_limits<double>::infinity();
  return hbar * speed_of_light / (boltzmann * temperature_K) / metres_per_um;
}

double matsubara_wavenumber(int n, double thermal_wavelength) {
  return 2.0 * std::numbers::pi * n / thermal_wavelength;
}

}  // namespace units

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};

}  // namespace

void validate(const MaterialModel& model) {
  std::visit(overloaded{
                 [](const PerfectReflector&) {},
                 [](const Plasma& p) {
                   if (!positive_finite(p.plasma_wavelength))
                     throw std::invalid_argument("plasma wavelength must be > 0");
                 },
                 [](const Drude& d) {
                   if (!positive_finite(d.plasma_wavelength))
                     throw std::invalid_argument("plasma wavelength must be > 0");
                   if (!positive_finite(d.relaxation_wavelength))
                     throw std::invalid_argument("relaxation wavelength must be > 0");
                 }},
             model);
}

std::string describe(const MaterialModel& model) {
  std::ostringstream os;
  std::visit(overloaded{[&](const PerfectReflector&) { os << "perfect"; },
                        [&](const Plasma&) { os << "plasma"; },
                        [&](const Drude&) { os << "drude"; }},
             model);
  return os.str();
}

bool is_perfect(const MaterialModel& model) {
  return std::holds_alternative<PerfectReflector>(model);
}

namespace materials {

double plasma_wavenumber(double plasma_wavelength) {
  return 2.0 * std::numbers::pi / plasma_wavelength;
}

double reduced_conductivity(const Drude& model) {
  const double wp = plasma_wavenumber(model.plasma_wavelength);
  const double g = 2.0 * std::numbers::pi / model.relaxation_wavelength;
  return wp * wp / g;
}

std::optional<double> permittivity_or_divergent(const MaterialModel& model,
                                                double K) {
  if (!(K >= 0.0)) throw std::invalid_argument("frequency must be >= 0");
  validate(model);
  return std::visit(
      overloaded{
          [](const PerfectReflector&) -> std::optional<double> {
            throw std::invalid_argument(
                "perfect reflector has no finite permittivity");
          },
          [K](const Plasma& p) -> std::optional<double> {
            if (K == 0.0) return std::nullopt;
            const double wp = plasma_wavenumber(p.plasma_wavelength);
            return 1.0 + (wp / K) * (wp / K);
          },
          [K](const Drude& d) -> std::optional<double> {
            if (K == 0.0) return std::nullopt;
            const double wp = plasma_wavenumber(d.plasma_wavelength);
            const double g = 2.0 * std::numbers::pi / d.relaxation_wavelength;
            return 1.0 + wp * wp / (K * (K + g));
          }},
      model);
}

double permittivity(const MaterialModel& model, double K) {
  if (!(K > 0.0)) {
    throw std::domain_error("permittivity diverges at zero frequency; use the "
                            "zero-frequency path");
  }
  return *permittivity_or_divergent(model, K);
}

FresnelPair fresnel_reduced(double eps, double u) {
  // kappa_t / K = v = sqrt(u^2 + eps - 1). Both amplitudes are written as
  // ratios bounded by one so that huge eps or u cannot overflow, and r_TE
  // avoids the kappa - kappa_t cancellation.
  const double root = std::sqrt(eps - 1.0);
  const double v = std::hypot(u, root);
  const double g = root / (u + v);
  const double q = (v / u) / eps;
  return {-g * g, (1.0 - q) / (1.0 + q)};
}

FresnelPair fresnel_zero_frequency(const MaterialModel& model, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("k must be > 0");
  validate(model);
  return std::visit(
      overloaded{[](const PerfectReflector&) { return FresnelPair{-1.0, 1.0}; },
                 [k](const Plasma& p) {
                   const double wp = plasma_wavenumber(p.plasma_wavelength);
                   const double kt = std::hypot(k, wp);
                   return FresnelPair{-(wp * wp) / ((k + kt) * (k + kt)), 1.0};
                 },
                 [](const Drude&) { return FresnelPair{0.0, 1.0}; }},
      model);
}

FresnelPair fresnel(const MaterialModel& model, double K, double k) {
  if (!(K >= 0.0) || !(k >= 0.0) || (K == 0.0 && k == 0.0)) {
    throw std::invalid_argument("fresnel requires K >= 0, k >= 0, not both 0");
  }
  if (K == 0.0) return fresnel_zero_frequency(model, k);
  if (is_perfect(model)) return {-1.0, 1.0};
  const double eps = permittivity(model, K);
  const double u = std::hypot(k, K) / K;
  return fresnel_reduced(eps, u);
}

}  // namespace materials
}  // namespace casimir
