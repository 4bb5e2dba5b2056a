#include "casimir/roundtrip.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "casimir/angular.hpp"
#include "casimir/mie.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

void validate(const Geometry& geom) {
  if (!(geom.L > 0.0) || !std::isfinite(geom.L)) {
    throw std::invalid_argument("separation L must be finite and > 0");
  }
  if (!(geom.R > 0.0) || !std::isfinite(geom.R)) {
    throw std::invalid_argument("sphere radius R must be finite and > 0");
  }
}

}  // namespace casimir

namespace casimir::roundtrip {

namespace {

constexpr double series_threshold = 1e-2;

// log of sqrt((2l+1)(l-m)! / (l(l+1)(l+m)!))
double log_normalization(int l, int m) {
  return 0.5 * (std::log(2.0 * l + 1.0) + std::lgamma(l - m + 1.0) -
                std::log(l * (l + 1.0)) - std::lgamma(l + m + 1.0));
}

// log of the leading coefficient of tau_l^m(u) ~ l A_lm u^l as u -> inf,
// A_lm = (2l)! / (2^l l! (l-m)!).
double log_tau_leading(int l, int m) {
  return std::log(static_cast<double>(l)) + std::lgamma(2.0 * l + 1.0) -
         l * std::log(2.0) - std::lgamma(l + 1.0) - std::lgamma(l - m + 1.0);
}

void require_finite(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  if (!m.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
}

double trace_series(const Eigen::MatrixXd& m, double norm) {
  double sum = 0.0;
  Eigen::MatrixXd power = m;
  double bound = norm;
  for (int k = 1; k <= 200; ++k) {
    sum -= power.trace() / k;
    bound *= norm;
    if (bound / (k + 1) <= 1e-18 * std::abs(sum) || bound == 0.0) break;
    power = power * m;
  }
  return sum;
}

Eigen::MatrixXd apply_sign_flip(const Eigen::MatrixXd& m, int nl) {
  Eigen::MatrixXd out = m;
  out.topRows(nl) *= -1.0;
  return out;
}

}  // namespace

std::size_t block_dimension(int m, int lmax) {
  if (m < 0) throw std::invalid_argument("m must be >= 0");
  const int lmin = min_order(m);
  return lmin > lmax ? 0 : static_cast<std::size_t>(2 * (lmax - lmin + 1));
}

std::size_t block_position(int m, int lmax, MultipoleIndex idx) {
  const int lmin = min_order(m);
  if (idx.l < lmin || idx.l > lmax) throw std::out_of_range("multipole order outside block");
  const int nl = lmax - lmin + 1;
  return static_cast<std::size_t>(static_cast<int>(idx.p) * nl + (idx.l - lmin));
}

MultipoleIndex block_index(int m, int lmax, std::size_t position) {
  const std::size_t dim = block_dimension(m, lmax);
  if (position >= dim) throw std::out_of_range("block position out of range");
  const int nl = static_cast<int>(dim / 2);
  const int pos = static_cast<int>(position);
  return {min_order(m) + pos % nl, pos < nl ? Polarization::Electric : Polarization::Magnetic};
}

int default_quadrature_order(int lmax) { return 2 * lmax + 40; }

int resolve_quadrature_order(const QuadratureSpec& spec, int lmax) {
  if (spec.order < 0) throw std::invalid_argument("quadrature order must be >= 0");
  return spec.order == 0 ? default_quadrature_order(lmax) : spec.order;
}

struct RoundTripOperator::Impl {
  Geometry geom;
  int lmax = 0;
  double K = 0.0;
  double center = 0.0;
  int order = 0;
  bool flip = false;
  bool is_static = false;
  bool perfect = false;

  // Per node (dynamic: s-nodes of u = 1 + s/a; static: t-nodes).
  std::vector<double> half_log_weight;
  std::vector<double> d;         // u - 1
  std::vector<double> t;         // 2 K (L+R) u, or the static t-node
  std::vector<double> sqrt_tm;
  std::vector<double> sqrt_te;   // sqrt(-r_TE)

  // Sphere: log rho (dynamic) or log c (static), index l.
  std::vector<double> log_electric;
  std::vector<double> log_magnetic;

  RoundTripBlock dynamic_block(int m, bool with_derivative) const;
  RoundTripBlock static_block(int m, bool with_derivative) const;
};

RoundTripOperator::RoundTripOperator(const Geometry& geom, const MaterialModel& model,
                                     int lmax, double K, const QuadratureSpec& quad,
                                     bool flip_electric_sign)
    : impl_(std::make_unique<Impl>()) {
  validate(geom);
  validate(model);
  if (lmax < 1) throw std::invalid_argument("lmax must be >= 1");
  if (!(K >= 0.0) || !std::isfinite(K)) throw std::invalid_argument("wavenumber must be >= 0");
  Impl& p = *impl_;
  p.geom = geom;
  p.lmax = lmax;
  p.K = K;
  p.center = geom.center_distance();
  p.order = resolve_quadrature_order(quad, lmax);
  p.flip = flip_electric_sign;
  p.is_static = (K == 0.0);
  p.perfect = is_perfect(model);

  const auto rule = quadrature::gauss_laguerre(p.order);
  const std::size_t n = rule->nodes.size();
  p.half_log_weight.resize(n);
  p.d.resize(n);
  p.t.resize(n);
  p.sqrt_tm.resize(n);
  p.sqrt_te.resize(n);

  if (p.is_static) {
    const mie::SphereReflection c = mie::sphere_reflection_static(model, lmax, geom.R);
    p.log_electric = c.log_electric;
    p.log_magnetic = c.log_magnetic;
    for (std::size_t j = 0; j < n; ++j) {
      const double tj = rule->nodes[j];
      p.half_log_weight[j] = 0.5 * rule->log_weights[j];
      p.t[j] = tj;
      p.d[j] = std::numeric_limits<double>::infinity();
      const auto r = materials::fresnel_zero_frequency(model, tj / (2.0 * p.center));
      p.sqrt_tm[j] = std::sqrt(std::max(r.tm, 0.0));
      p.sqrt_te[j] = std::sqrt(std::max(-r.te, 0.0));
    }
    return;
  }

  const mie::SphereReflection rho = mie::sphere_reflection(model, lmax, K, geom.R);
  p.log_electric = rho.log_electric;
  p.log_magnetic = rho.log_magnetic;
  const double a = 2.0 * K * p.center;
  const double eps = p.perfect ? 0.0 : materials::permittivity(model, K);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = rule->nodes[j];
    p.half_log_weight[j] = 0.5 * (rule->log_weights[j] - a - std::log(a));
    p.d[j] = s / a;
    p.t[j] = a + s;
    materials::FresnelPair r{-1.0, 1.0};
    if (!p.perfect) r = materials::fresnel_reduced(eps, 1.0 + p.d[j]);
    p.sqrt_tm[j] = std::sqrt(std::max(r.tm, 0.0));
    p.sqrt_te[j] = std::sqrt(std::max(-r.te, 0.0));
  }
}

RoundTripOperator::~RoundTripOperator() = default;
RoundTripOperator::RoundTripOperator(RoundTripOperator&&) noexcept = default;
RoundTripOperator& RoundTripOperator::operator=(RoundTripOperator&&) noexcept = default;

int RoundTripOperator::lmax() const { return impl_->lmax; }
double RoundTripOperator::wavenumber() const { return impl_->K; }
bool RoundTripOperator::is_static() const { return impl_->is_static; }
int RoundTripOperator::quadrature_order() const { return impl_->order; }

RoundTripBlock RoundTripOperator::block(int m, bool with_derivative) const {
  if (m < 0) throw std::invalid_argument("m must be >= 0");
  RoundTripBlock b = impl_->is_static ? impl_->static_block(m, with_derivative)
                                      : impl_->dynamic_block(m, with_derivative);
  if (!b.entries.allFinite()) {
    throw std::overflow_error("round-trip block has non-finite entries (m = " +
                              std::to_string(m) + ")");
  }
  if (impl_->flip && b.dimension() > 0) {
    const int nl = static_cast<int>(b.dimension() / 2);
    b.entries = apply_sign_flip(b.entries, nl);
    if (with_derivative) b.center_derivative = apply_sign_flip(b.center_derivative, nl);
    b.symmetric = false;
  }
  return b;
}

RoundTripBlock RoundTripOperator::Impl::dynamic_block(int m, bool with_derivative) const {
  RoundTripBlock b;
  b.m = m;
  b.lmax = lmax;
  b.wavenumber = K;
  b.center_distance = center;
  const std::size_t dim = block_dimension(m, lmax);
  b.entries = Eigen::MatrixXd::Zero(dim, dim);
  if (dim == 0) return b;

  const int lmin = min_order(m);
  const int nl = lmax - lmin + 1;
  const std::size_t n = d.size();
  std::vector<double> log_norm(lmax + 1, 0.0);
  for (int l = lmin; l <= lmax; ++l) log_norm[l] = log_normalization(l, m);

  // Gram factor: M = Z^T Z with one TM row and one TE row per node.
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(2 * n, dim);
  std::vector<double> pi(lmax + 1), tau(lmax + 1);
  for (std::size_t j = 0; j < n; ++j) {
    const double log_z = scaled_angular_functions(lmax, m, d[j], pi, tau);
    const Eigen::Index tm_row = static_cast<Eigen::Index>(j);
    const Eigen::Index te_row = static_cast<Eigen::Index>(n + j);
    for (int l = lmin; l <= lmax; ++l) {
      const double base = half_log_weight[j] + log_norm[l] + l * log_z;
      const double amp_e = std::exp(base + 0.5 * log_electric[l]);
      const double amp_m = std::exp(base + 0.5 * log_magnetic[l]);
      const Eigen::Index ce = l - lmin;
      const Eigen::Index cm = nl + l - lmin;
      Z(tm_row, ce) = sqrt_tm[j] * amp_e * tau[l];
      Z(tm_row, cm) = sqrt_tm[j] * amp_m * pi[l];
      Z(te_row, ce) = sqrt_te[j] * amp_e * pi[l];
      Z(te_row, cm) = sqrt_te[j] * amp_m * tau[l];
    }
  }
  b.entries.noalias() = Z.transpose() * Z;
  if (with_derivative) {
    for (std::size_t j = 0; j < n; ++j) {
      const double st = std::sqrt(t[j]);
      Z.row(static_cast<Eigen::Index>(j)) *= st;
      Z.row(static_cast<Eigen::Index>(n + j)) *= st;
    }
    b.center_derivative.noalias() = Z.transpose() * Z;
    b.center_derivative *= -1.0 / center;
  }
  return b;
}

RoundTripBlock RoundTripOperator::Impl::static_block(int m, bool with_derivative) const {
  RoundTripBlock b;
  b.m = m;
  b.lmax = lmax;
  b.wavenumber = 0.0;
  b.center_distance = center;
  const std::size_t dim = block_dimension(m, lmax);
  b.entries = Eigen::MatrixXd::Zero(dim, dim);
  if (with_derivative) b.center_derivative = Eigen::MatrixXd::Zero(dim, dim);
  if (dim == 0) return b;

  const int lmin = min_order(m);
  const int nl = lmax - lmin + 1;
  const double log_ratio = std::log(geom.R / (2.0 * center));
  std::vector<double> h_e(lmax + 1), h_m(lmax + 1);
  for (int l = lmin; l <= lmax; ++l) {
    const double common = log_normalization(l, m) + log_tau_leading(l, m) + (l + 0.5) * log_ratio;
    h_e[l] = common + 0.5 * log_electric[l];
    h_m[l] = common + 0.5 * log_magnetic[l];
  }

  // TM amplitude is 1 at zero frequency in every model: the t-integral is
  // a plain Gamma function.
  for (int l1 = lmin; l1 <= lmax; ++l1) {
    for (int l2 = lmin; l2 <= lmax; ++l2) {
      const int nn = l1 + l2;
      const double v = std::exp(h_e[l1] + h_e[l2] + std::lgamma(nn + 1.0));
      b.entries(l1 - lmin, l2 - lmin) = v;
      if (with_derivative) b.center_derivative(l1 - lmin, l2 - lmin) = -(nn + 1.0) / center * v;
    }
  }

  if (perfect) {
    for (int l1 = lmin; l1 <= lmax; ++l1) {
      for (int l2 = lmin; l2 <= lmax; ++l2) {
        const int nn = l1 + l2;
        const double v = std::exp(h_m[l1] + h_m[l2] + std::lgamma(nn + 1.0));
        b.entries(nl + l1 - lmin, nl + l2 - lmin) = v;
        if (with_derivative) {
          b.center_derivative(nl + l1 - lmin, nl + l2 - lmin) = -(nn + 1.0) / center * v;
        }
      }
    }
    return b;
  }

  // Plasma TE amplitude depends on k: Gram form over the Laguerre t-nodes.
  // Drude: magnetic coefficients vanish and the block stays zero.
  const std::size_t n = t.size();
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(n, nl);
  bool any = false;
  for (std::size_t j = 0; j < n; ++j) {
    if (sqrt_te[j] == 0.0) continue;
    const double log_t = std::log(t[j]);
    for (int l = lmin; l <= lmax; ++l) {
      if (!std::isfinite(h_m[l])) continue;
      Y(static_cast<Eigen::Index>(j), l - lmin) =
          sqrt_te[j] * std::exp(half_log_weight[j] + h_m[l] + l * log_t);
      any = true;
    }
  }
  if (!any) return b;
  b.entries.bottomRightCorner(nl, nl).noalias() = Y.transpose() * Y;
  if (with_derivative) {
    for (std::size_t j = 0; j < n; ++j) Y.row(static_cast<Eigen::Index>(j)) *= std::sqrt(t[j]);
    b.center_derivative.bottomRightCorner(nl, nl).noalias() = Y.transpose() * Y;
    b.center_derivative.bottomRightCorner(nl, nl) *= -1.0 / center;
  }
  return b;
}

RoundTripBlock assemble_block(int m, double K, const Geometry& geom,
                              const MaterialModel& model, int lmax,
                              const QuadratureSpec& quad, bool with_derivative) {
  if (!(K > 0.0)) throw std::invalid_argument("assemble_block needs K > 0");
  return RoundTripOperator(geom, model, lmax, K, quad).block(m, with_derivative);
}

RoundTripBlock assemble_block_static(int m, const Geometry& geom,
                                     const MaterialModel& model, int lmax,
                                     const QuadratureSpec& quad, bool with_derivative) {
  return RoundTripOperator(geom, model, lmax, 0.0, quad).block(m, with_derivative);
}

double log_det_one_minus(const Eigen::MatrixXd& m) {
  require_finite(m);
  if (m.rows() == 0) return 0.0;
  const double norm = m.norm();
  if (norm == 0.0) return 0.0;
  if (norm < series_threshold) return trace_series(m, norm);
  const Eigen::Index n = m.rows();
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(Eigen::MatrixXd::Identity(n, n) - m);
  const Eigen::MatrixXd& packed = lu.matrixLU();
  double sum = 0.0;
  int sign = static_cast<int>(lu.permutationP().determinant());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double pivot = packed(i, i);
    if (pivot == 0.0) throw SpectralRadiusError("det(1 - M) = 0");
    if (pivot < 0.0) sign = -sign;
    sum += std::log(std::abs(pivot));
  }
  if (sign < 0) throw SpectralRadiusError("det(1 - M) < 0: spectral radius >= 1");
  return sum;
}

double log_det_one_minus(const RoundTripBlock& block) {
  if (!block.symmetric) return log_det_one_minus(block.entries);
  return log_det_one_minus_with_derivative(block).value;
}

LogDetWithDerivative log_det_one_minus_with_derivative(const RoundTripBlock& block) {
  const Eigen::MatrixXd& m = block.entries;
  require_finite(m);
  const bool want_derivative = block.center_derivative.size() > 0;
  if (want_derivative) {
    require_finite(block.center_derivative);
    if (block.center_derivative.rows() != m.rows()) {
      throw std::invalid_argument("derivative block has the wrong size");
    }
  }
  const Eigen::Index n = m.rows();
  if (n == 0) return {0.0, 0.0};
  const Eigen::MatrixXd one_minus = Eigen::MatrixXd::Identity(n, n) - m;
  const double norm = m.norm();

  if (!block.symmetric) {
    const double value = log_det_one_minus(m);
    double derivative = 0.0;
    if (want_derivative) {
      const Eigen::PartialPivLU<Eigen::MatrixXd> lu(one_minus);
      derivative = -lu.solve(block.center_derivative).trace();
    }
    return {value, derivative};
  }

  // Symmetric positive semi-definite M: a Cholesky factorization of 1 - M
  // doubles as the passivity check.
  const Eigen::LLT<Eigen::MatrixXd> llt(one_minus);
  if (llt.info() != Eigen::Success) {
    throw SpectralRadiusError("1 - M is not positive definite (m = " +
                              std::to_string(block.m) + ")");
  }
  double value = 0.0;
  if (norm < series_threshold) {
    value = norm == 0.0 ? 0.0 : trace_series(m, norm);
  } else {
    const Eigen::MatrixXd& lower = llt.matrixLLT();
    for (Eigen::Index i = 0; i < n; ++i) value += 2.0 * std::log(lower(i, i));
  }
  double derivative = 0.0;
  if (want_derivative) derivative = -llt.solve(block.center_derivative).trace();
  return {value, derivative};
}

}  // namespace casimir::roundtrip
