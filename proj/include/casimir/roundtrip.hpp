#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

#include "casimir/geometry.hpp"
#include "casimir/materials.hpp"

namespace casimir::roundtrip {

enum class Polarization { Electric = 0, Magnetic = 1 };

struct MultipoleIndex {
  int l;
  Polarization p;
  bool operator==(const MultipoleIndex&) const = default;
};

/// Smallest multipole order in block m.
inline int min_order(int m) { return m > 1 ? m : 1; }

/// Block dimension 2 (lmax - max(1, m) + 1), zero when m > lmax.
std::size_t block_dimension(int m, int lmax);

/// Index layout: polarization slow, l fast.
std::size_t block_position(int m, int lmax, MultipoleIndex idx);
MultipoleIndex block_index(int m, int lmax, std::size_t position);

/// Gauss-Laguerre order for the transverse-wavevector integral.
/// order = 0 picks default_quadrature_order(lmax).
struct QuadratureSpec {
  int order = 0;
};

int default_quadrature_order(int lmax);
int resolve_quadrature_order(const QuadratureSpec& spec, int lmax);

/// Raised when 1 - M is not positive definite, i.e. the block has an
/// eigenvalue >= 1. Passive mirrors never produce this; it signals a bug.
class SpectralRadiusError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Round-trip block M^(m) for fixed m at reduced wavenumber K = xi/c.
///
/// Entries are stored in a symmetrized basis: M_sym = D M D^{-1} with a
/// diagonal D, so determinants and traces agree with the physical block.
struct RoundTripBlock {
  int m = 0;
  int lmax = 0;
  double wavenumber = 0.0;       // K in 1/um; 0 for the static block
  double center_distance = 0.0;  // L + R in um
  Eigen::MatrixXd entries;
  Eigen::MatrixXd center_derivative;  // d entries / d(L+R); empty unless asked
  bool symmetric = true;

  std::size_t dimension() const { return static_cast<std::size_t>(entries.rows()); }
};

/// Precomputes everything that depends on the frequency only (Fresnel
/// amplitudes at the quadrature nodes, sphere reflection strengths) and then
/// assembles blocks for any m. K = 0 selects the exact zero-frequency limit.
///
/// flip_electric_sign inverts the sign of every electric Mie coefficient.
/// It exists for mutation testing of the validation suite only.
class RoundTripOperator {
 public:
  RoundTripOperator(const Geometry& geom, const MaterialModel& model, int lmax,
                    double K, const QuadratureSpec& quad = {},
                    bool flip_electric_sign = false);
  ~RoundTripOperator();
  RoundTripOperator(RoundTripOperator&&) noexcept;
  RoundTripOperator& operator=(RoundTripOperator&&) noexcept;

  RoundTripBlock block(int m, bool with_derivative = false) const;

  int lmax() const;
  double wavenumber() const;
  bool is_static() const;
  int quadrature_order() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Single block at K > 0.
RoundTripBlock assemble_block(int m, double K, const Geometry& geom,
                              const MaterialModel& model, int lmax,
                              const QuadratureSpec& quad = {},
                              bool with_derivative = false);

/// Exact K -> 0 limit of the block.
RoundTripBlock assemble_block_static(int m, const Geometry& geom,
                                     const MaterialModel& model, int lmax,
                                     const QuadratureSpec& quad = {},
                                     bool with_derivative = false);

/// ln det(1 - M) for a general square matrix with spectral radius < 1,
/// via a pivoted LU (or the trace series for tiny M). Throws
/// std::invalid_argument on non-finite entries and SpectralRadiusError when
/// det(1 - M) <= 0.
double log_det_one_minus(const Eigen::MatrixXd& m);

double log_det_one_minus(const RoundTripBlock& block);

struct LogDetWithDerivative {
  double value;       // ln det(1 - M)
  double derivative;  // d/d(L+R) ln det(1 - M) = -tr((1 - M)^{-1} dM)
};

/// Needs block.center_derivative.
LogDetWithDerivative log_det_one_minus_with_derivative(const RoundTripBlock& block);

}  // namespace casimir::roundtrip
