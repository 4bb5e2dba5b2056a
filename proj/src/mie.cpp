#include "casimir/mie.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "casimir/riccati.hpp"

namespace casimir::mie {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

double safe_log(double v) { return v > 0.0 ? std::log(v) : neg_inf; }

// log of 1 / ((2l+1)!! (2l-1)!!)
double log_double_factorial_product(int l) {
  const double log_odd_upper =
      std::lgamma(2.0 * l + 2.0) - l * std::log(2.0) - std::lgamma(l + 1.0);
  const double log_odd_lower =
      std::lgamma(2.0 * l + 1.0) - l * std::log(2.0) - std::lgamma(l + 1.0);
  return -(log_odd_upper + log_odd_lower);
}

void check_args(int lmax, double R) {
  if (lmax < 1) throw std::invalid_argument("multipole order must be >= 1");
  if (!(R > 0.0)) throw std::invalid_argument("sphere radius must be > 0");
}

}  // namespace

SphereReflection sphere_reflection(const MaterialModel& model, int lmax,
                                   double K, double R) {
  check_args(lmax, R);
  if (!(K > 0.0)) {
    throw std::invalid_argument(
        "sphere_reflection needs xi > 0; use sphere_reflection_static");
  }
  const double x = K * R;
  const RiccatiTable t = riccati_pair(lmax, x);

  SphereReflection out;
  out.log_electric.assign(lmax + 1, neg_inf);
  out.log_magnetic.assign(lmax + 1, neg_inf);

  if (is_perfect(model)) {
    for (int l = 1; l <= lmax; ++l) {
      const double log_se = t.log_s[l] - t.log_e[l];
      out.log_magnetic[l] = log_se;
      out.log_electric[l] = log_se + std::log(t.dlog_s[l] / -t.dlog_e[l]);
    }
    return out;
  }

  const double n = std::sqrt(materials::permittivity(model, K));
  const double xt = n * x;
  const std::vector<double> rt = bessel_i_ratios(lmax, xt);
  for (int l = 1; l <= lmax; ++l) {
    const double log_se = t.log_s[l] - t.log_e[l];
    const double dst = (l + 1.0) / xt + rt[l];
    // The (l+1)/x pieces of n s_t'/s_t and s'/s cancel in the magnetic
    // numerator; it is written in terms of the ratios only.
    const double num_m = n * rt[l] - t.i_ratio[l];
    const double den_m = n * dst - t.dlog_e[l];
    const double num_e = n * t.dlog_s[l] - dst;
    const double den_e = dst - n * t.dlog_e[l];
    out.log_magnetic[l] = log_se + safe_log(num_m / den_m);
    out.log_electric[l] = log_se + safe_log(num_e / den_e);
  }
  return out;
}

SphereReflection sphere_reflection_static(const MaterialModel& model, int lmax,
                                          double R) {
  check_args(lmax, R);
  validate(model);
  SphereReflection out;
  out.log_electric.assign(lmax + 1, neg_inf);
  out.log_magnetic.assign(lmax + 1, neg_inf);

  std::vector<double> alpha_ratio;
  double alpha = 0.0;
  if (const auto* p = std::get_if<Plasma>(&model)) {
    alpha = materials::plasma_wavenumber(p->plasma_wavelength) * R;
    alpha_ratio = bessel_i_ratios(lmax, alpha);
  }

  for (int l = 1; l <= lmax; ++l) {
    const double log_d = log_double_factorial_product(l);
    out.log_electric[l] = log_d + std::log((l + 1.0) / l);
    if (is_perfect(model)) {
      out.log_magnetic[l] = log_d;
    } else if (std::holds_alternative<Plasma>(model)) {
      const double ar = alpha * alpha_ratio[l];
      out.log_magnetic[l] = log_d + std::log(ar / (2.0 * l + 1.0 + ar));
    }
  }
  return out;
}

MieCoefficients mie_ab(const MaterialModel& model, int l, double K, double R) {
  const SphereReflection s = sphere_reflection(model, l, K, R);
  const double sign = (l % 2 == 0) ? 1.0 : -1.0;
  return {sign * std::exp(s.log_electric[l]), -sign * std::exp(s.log_magnetic[l])};
}

MieCoefficients mie_ab_zero_frequency(const MaterialModel& model, int l,
                                      double R) {
  const SphereReflection s = sphere_reflection_static(model, l, R);
  const double sign = (l % 2 == 0) ? 1.0 : -1.0;
  return {sign * std::exp(s.log_electric[l]), -sign * std::exp(s.log_magnetic[l])};
}

}  // namespace casimir::mie
