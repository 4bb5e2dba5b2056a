#include "casimir/angular.hpp"

#include <cmath>
#include <stdexcept>

namespace casimir::roundtrip {

namespace {

// Fills q[l] = Q_l^m(u) / z^l for l = 0..lmax (zero for l < m).
void scaled_legendre(int lmax, int m, double u, double w, double inv_z,
                     std::span<double> q) {
  for (int l = 0; l <= lmax; ++l) q[l] = 0.0;
  if (m > lmax) return;
  const double uz = u * inv_z;
  const double inv_z2 = inv_z * inv_z;
  // Q_m^m = (2m-1)!! w^m
  double start = 1.0;
  const double wz = w * inv_z;
  for (int k = 1; k <= m; ++k) start *= (2.0 * k - 1.0) * wz;
  q[m] = start;
  if (m + 1 <= lmax) q[m + 1] = (2.0 * m + 1.0) * uz * q[m];
  for (int l = m + 2; l <= lmax; ++l) {
    q[l] = ((2.0 * l - 1.0) * uz * q[l - 1] - (l + m - 1.0) * inv_z2 * q[l - 2]) /
           (l - m);
  }
}

}  // namespace

double scaled_angular_functions(int lmax, int m, double d,
                                std::span<double> pi_hat,
                                std::span<double> tau_hat) {
  if (!(d >= 0.0)) throw std::invalid_argument("angular functions need u >= 1");
  if (m < 0 || lmax < 1) throw std::invalid_argument("need lmax >= 1, m >= 0");
  if (pi_hat.size() < static_cast<std::size_t>(lmax + 1) ||
      tau_hat.size() < static_cast<std::size_t>(lmax + 1)) {
    throw std::invalid_argument("angular function buffers too small");
  }
  const double u = 1.0 + d;
  const double w = std::sqrt(d * (2.0 + d));
  const double log_z = std::log1p(d + w);
  const double inv_z = 1.0 / (u + w);

  // tau_l^m = m u Q_l^m / w + Q_l^{m+1}; pi_l^m = m Q_l^m / w.
  // tau_hat is used as scratch for Q^{m+1} first.
  scaled_legendre(lmax, m + 1, u, w, inv_z, tau_hat);
  if (m == 0) {
    for (int l = 0; l <= lmax; ++l) pi_hat[l] = 0.0;
    return log_z;
  }
  scaled_legendre(lmax, m, u, w, inv_z, pi_hat);
  for (int l = 0; l <= lmax; ++l) {
    const double qw = m * pi_hat[l] / w;
    pi_hat[l] = qw;
    tau_hat[l] += u * qw;
  }
  return log_z;
}

AngularFunctions angular_functions(int lmax, int m, double u) {
  if (!(u >= 1.0)) throw std::invalid_argument("angular functions need u >= 1");
  AngularFunctions out;
  out.m = m;
  out.u = u;
  out.pi.assign(lmax + 1, 0.0);
  out.tau.assign(lmax + 1, 0.0);
  if (u == 1.0 && m > 0) {
    // pi and tau stay finite at u = 1 but the scaled form divides by w.
    throw std::invalid_argument("angular functions at u = 1 need m = 0");
  }
  const double log_z = scaled_angular_functions(lmax, m, u - 1.0, out.pi, out.tau);
  for (int l = 0; l <= lmax; ++l) {
    const double scale = std::exp(l * log_z);
    out.pi[l] *= scale;
    out.tau[l] *= scale;
    if (!std::isfinite(out.pi[l]) || !std::isfinite(out.tau[l])) {
      throw std::overflow_error("angular functions overflow");
    }
  }
  return out;
}

}  // namespace casimir::roundtrip
