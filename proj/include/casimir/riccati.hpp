#pragma once

#include <vector>

namespace casimir::mie {

/// Modified Riccati-Bessel functions at real argument x > 0:
///   s_l(x) = x i_l(x)   (growing, s_1 = cosh x - sinh(x)/x)
///   e_l(x) = x k_l(x)   (decaying, e_0 = exp(-x), e_1 = exp(-x)(1 + 1/x))
/// with i_l = sqrt(pi/2x) I_{l+1/2} and k_l = sqrt(2/(pi x)) K_{l+1/2}.
/// Values are held as logarithms; derivatives as logarithmic derivatives.
/// Wronskian: s_l e_l' - s_l' e_l = -1.
struct RiccatiTable {
  double x = 0.0;
  int lmax = 0;
  std::vector<double> log_s;     // [l], l = 0..lmax
  std::vector<double> dlog_s;    // s_l'/s_l
  std::vector<double> log_e;     // [l]
  std::vector<double> dlog_e;    // e_l'/e_l
  std::vector<double> i_ratio;   // [l] = i_{l+1}(x)/i_l(x), l = 0..lmax
};

/// Fills l = 0..lmax. The i-type ratios come from a continued fraction
/// followed by downward recurrence; the k-type from upward recurrence; i_l is
/// normalised through the cross-product i_l k_{l+1} + i_{l+1} k_l = 1/x^2.
/// Throws std::overflow_error if the scaling fails (non-finite logs).
RiccatiTable riccati_pair(int lmax, double x);

/// i_{l+1}(x)/i_l(x) for l = 0..lmax. Cheaper than riccati_pair when only
/// the ratios are needed (internal size parameter of a dielectric sphere).
std::vector<double> bessel_i_ratios(int lmax, double x);

}  // namespace casimir::mie
