#pragma once

#include <memory>
#include <vector>

namespace casimir::quadrature {

/// n-point Gauss-Legendre rule on [-1, 1].
struct LegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Laguerre rule for integral_0^inf exp(-s) f(s) ds. Weights
/// are kept as logarithms: the smallest ones underflow a double for n ~ 150.
struct LaguerreRule {
  std::vector<double> nodes;
  std::vector<double> log_weights;
};

/// Rules are computed once per order and shared; the returned objects are
/// immutable and safe to read from any thread.
std::shared_ptr<const LegendreRule> gauss_legendre(int n);
std::shared_ptr<const LaguerreRule> gauss_laguerre(int n);

}  // namespace casimir::quadrature
