#include "casimir/riccati.hpp"

#include <cmath>
#include <stdexcept>

namespace casimir::mie {

namespace {

// i_{l+1}/i_l = 1/(b_{l+1} + 1/(b_{l+2} + ...)), b_j = (2j+1)/x. The
// denominator is evaluated with the modified Lentz algorithm.
double i_ratio_continued_fraction(int l, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  double f = (2.0 * l + 3.0) / x;
  double c = f;
  double d = 0.0;
  for (int j = l + 2; j < l + 2 + 10000000; ++j) {
    const double b = (2.0 * j + 1.0) / x;
    d = b + d;
    if (d == 0.0) d = tiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < eps) return 1.0 / f;
  }
  throw std::runtime_error("Bessel ratio continued fraction did not converge");
}

}  // namespace

std::vector<double> bessel_i_ratios(int lmax, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument("Riccati-Bessel argument must be > 0");
  }
  if (lmax < 0) throw std::invalid_argument("lmax must be >= 0");
  std::vector<double> ratio(lmax + 1);
  ratio[lmax] = i_ratio_continued_fraction(lmax, x);
  for (int l = lmax - 1; l >= 0; --l) {
    ratio[l] = 1.0 / ((2.0 * l + 3.0) / x + ratio[l + 1]);
  }
  return ratio;
}

RiccatiTable riccati_pair(int lmax, double x) {
  RiccatiTable t;
  t.x = x;
  t.lmax = lmax;
  t.i_ratio = bessel_i_ratios(lmax + 1, x);
  t.i_ratio.resize(lmax + 2);

  // k_l/k_{l-1} for l = 1..lmax+1 by upward recurrence.
  std::vector<double> q(lmax + 2);
  q[0] = 0.0;
  if (lmax + 1 >= 1) q[1] = (1.0 + x) / x;
  for (int l = 1; l <= lmax; ++l) q[l + 1] = (2.0 * l + 1.0) / x + 1.0 / q[l];

  t.log_s.resize(lmax + 1);
  t.dlog_s.resize(lmax + 1);
  t.log_e.resize(lmax + 1);
  t.dlog_e.resize(lmax + 1);

  const double logx = std::log(x);
  double log_k = -x - logx;  // k_0 = exp(-x)/x
  for (int l = 0; l <= lmax; ++l) {
    if (l > 0) log_k += std::log(q[l]);
    const double log_i = -2.0 * logx - log_k - std::log(q[l + 1] + t.i_ratio[l]);
    t.log_s[l] = logx + log_i;
    t.log_e[l] = logx + log_k;
    t.dlog_s[l] = (l + 1.0) / x + t.i_ratio[l];
    t.dlog_e[l] = (l == 0) ? -1.0 : -1.0 / q[l] - l / x;
    if (!std::isfinite(t.log_s[l]) || !std::isfinite(t.log_e[l])) {
      throw std::overflow_error("Riccati-Bessel scaling failed");
    }
  }
  t.i_ratio.resize(lmax + 1);
  return t;
}

}  // namespace casimir::mie
