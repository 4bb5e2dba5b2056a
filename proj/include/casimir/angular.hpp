#pragma once

#include <span>
#include <vector>

namespace casimir::roundtrip {

/// Mie angular functions continued to the evanescent sector, argument
/// u = kappa c / xi >= 1, w = sqrt(u^2 - 1). With
///   Q_l^m(u) = w^m d^m P_l(u) / du^m
/// they are pi_l^m = m Q_l^m / w and tau_l^m = w dQ_l^m/du. Both are real and
/// non-negative for u > 1; pi_l^0 = 0.
struct AngularFunctions {
  int m = 0;
  double u = 1.0;
  std::vector<double> pi;   // [l], l = 0..lmax (zero below max(1, m))
  std::vector<double> tau;
};

/// Unscaled values; throws std::overflow_error when u^l leaves double range.
AngularFunctions angular_functions(int lmax, int m, double u);

/// Scaled values pi_hat_l = pi_l / z^l, tau_hat_l = tau_l / z^l, where
/// z = u + w = exp(arccosh u). Takes d = u - 1 >= 0 directly so that nodes
/// close to u = 1 keep full precision. Writes l = 0..lmax into the spans
/// (size >= lmax + 1) and returns log z.
double scaled_angular_functions(int lmax, int m, double d,
                                std::span<double> pi_hat,
                                std::span<double> tau_hat);

}  // namespace casimir::roundtrip
