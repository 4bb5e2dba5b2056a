#include "casimir/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace casimir::quadrature {

namespace {

LegendreRule make_legendre(int n) {
  LegendreRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    r.weights[i] = r.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return r;
}

// Laguerre polynomials L_n(x), L_{n-1}(x) by the three-term recurrence,
// rescaled on the fly; the true values are exp(log_scale) * (ln, lnm1).
void laguerre_pair(int n, double x, double& ln, double& lnm1,
                   double& log_scale) {
  double p0 = 1.0, p1 = 0.0;
  log_scale = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double p2 = p1;
    p1 = p0;
    p0 = ((2.0 * j - 1.0 - x) * p1 - (j - 1.0) * p2) / j;
    if (std::abs(p0) > 1e150) {
      p0 *= 1e-150;
      p1 *= 1e-150;
      log_scale += 150.0 * std::log(10.0);
    }
  }
  ln = p0;
  lnm1 = p1;
}

LaguerreRule make_laguerre(int n) {
  // Golub-Welsch for the nodes, then Newton polish and the closed-form
  // weight w_i = x_i / ((n+1)^2 L_{n+1}(x_i)^2) in log form.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + 1.0;
  for (int k = 0; k + 1 < n; ++k) sub[k] = k + 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

  LaguerreRule r;
  r.nodes.resize(n);
  r.log_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = solver.eigenvalues()[i];
    double ln = 0.0, lnm1 = 0.0, scale = 0.0;
    for (int it = 0; it < 5; ++it) {
      laguerre_pair(n, z, ln, lnm1, scale);
      const double dp = n * (ln - lnm1) / z;
      const double dz = ln / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, z)) break;
    }
    laguerre_pair(n + 1, z, ln, lnm1, scale);
    r.nodes[i] = z;
    r.log_weights[i] = std::log(z) - 2.0 * std::log(n + 1.0) -
                       2.0 * (std::log(std::abs(ln)) + scale);
  }
  return r;
}

template <class Rule, class Make>
std::shared_ptr<const Rule> cached(int n, Make make) {
  if (n < 1) throw std::invalid_argument("quadrature order must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const Rule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const Rule>(make(n));
  return slot;
}

}  // namespace

std::shared_ptr<const LegendreRule> gauss_legendre(int n) {
  return cached<LegendreRule>(n, make_legendre);
}

std::shared_ptr<const LaguerreRule> gauss_laguerre(int n) {
  return cached<LaguerreRule>(n, make_laguerre);
}

}  // namespace casimir::quadrature
