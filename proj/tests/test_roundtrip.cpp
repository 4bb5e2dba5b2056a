#include <doctest.h>

#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <stdexcept>
#include <complex>
#include <random>

#include "casimir/angular.hpp"
#include "casimir/mie.hpp"
#include "casimir/roundtrip.hpp"

using namespace casimir;
using namespace casimir::roundtrip;

namespace {

// Q_l^m(u) = w^m d^m P_l/du^m from the explicit power series of P_l, in
// long double. Independent of the recurrence used by the library.
long double legendre_derivative(int l, int m, long double u) {
  // P_l(u) = 2^-l sum_k (-1)^k C(l,k) C(2l-2k, l) u^(l-2k)
  long double sum = 0.0L;
  for (int k = 0; 2 * k <= l; ++k) {
    const int power = l - 2 * k;
    if (power < m) continue;
    long double c = std::pow(-1.0L, k) * std::tgamma(l + 1.0L) / (std::tgamma(k + 1.0L) * std::tgamma(l - k + 1.0L)) *
                    std::tgamma(2.0L * l - 2 * k + 1.0L) / (std::tgamma(l + 1.0L) * std::tgamma(l - 2.0L * k + 1.0L));
    // m-th derivative of u^power
    c *= std::tgamma(power + 1.0L) / std::tgamma(power - m + 1.0L);
    sum += c * std::pow(u, power - m);
  }
  return sum / std::pow(2.0L, l);
}

long double q_direct(int l, int m, long double u) {
  return std::pow(std::sqrt(u * u - 1.0L), m) * legendre_derivative(l, m, u);
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

const Geometry dipole_geom{10.0, 0.1};

}  // namespace

TEST_CASE("angular functions match direct Legendre evaluation for l <= 5") {
  for (long double u : {1.05L, 2.0L, 17.0L}) {
    for (int m = 0; m <= 4; ++m) {
      const AngularFunctions a = angular_functions(5, m, static_cast<double>(u));
      const long double w = std::sqrt(u * u - 1.0L);
      for (int l = std::max(1, m); l <= 5; ++l) {
        const long double pi_ref = m == 0 ? 0.0L : m * q_direct(l, m, u) / w;
        const long double tau_ref = m * u * q_direct(l, m, u) / w + q_direct(l, m + 1, u);
        if (m > 0) CHECK(relative(a.pi[l], static_cast<double>(pi_ref)) < 1e-12);
        CHECK(relative(a.tau[l], static_cast<double>(tau_ref)) < 1e-12);
      }
    }
  }
}

TEST_CASE("angular functions: closed forms for l = 1") {
  const double u = 3.0;
  const AngularFunctions m0 = angular_functions(1, 0, u);
  CHECK(m0.pi[1] == 0.0);
  CHECK(m0.tau[1] == doctest::Approx(std::sqrt(u * u - 1.0)).epsilon(1e-15));
  const AngularFunctions m1 = angular_functions(1, 1, u);
  CHECK(m1.pi[1] == doctest::Approx(1.0).epsilon(1e-15));  // constant
  CHECK(m1.tau[1] == doctest::Approx(u).epsilon(1e-15));   // proportional to u
}

TEST_CASE("scaled angular functions stay finite up to u = 1e3 and l = 60") {
  std::vector<double> pi(61), tau(61);
  for (int m : {0, 1, 30, 60}) {
    const double log_z = scaled_angular_functions(60, m, 999.0, pi, tau);
    CHECK(std::isfinite(log_z));
    for (int l = std::max(1, m); l <= 60; ++l) {
      CHECK(std::isfinite(pi[l]));
      CHECK(std::isfinite(tau[l]));
      CHECK(tau[l] > 0.0);
    }
  }
  CHECK_THROWS_AS(angular_functions(400, 0, 1e3), std::overflow_error);
}

TEST_CASE("block layout") {
  CHECK(block_dimension(0, 10) == 20);
  CHECK(block_dimension(3, 10) == 16);
  CHECK(block_dimension(11, 10) == 0);
  const MultipoleIndex idx{5, Polarization::Magnetic};
  CHECK(block_index(3, 10, block_position(3, 10, idx)) == idx);
  CHECK(block_position(0, 10, {1, Polarization::Electric}) == 0);
  CHECK(block_position(0, 10, {1, Polarization::Magnetic}) == 10);
}

TEST_CASE("m = 0 block does not mix polarizations") {
  const Geometry g{1.0, 2.0};
  for (const MaterialModel& model : {MaterialModel{PerfectReflector{}}, MaterialModel{Drude{0.136, 34.0}}}) {
    const RoundTripBlock b = assemble_block(0, 0.7, g, model, 8);
    const int nl = static_cast<int>(b.dimension() / 2);
    CHECK(b.entries.topRightCorner(nl, nl).cwiseAbs().maxCoeff() == 0.0);
    CHECK(b.entries.bottomLeftCorner(nl, nl).cwiseAbs().maxCoeff() == 0.0);
    CHECK(b.entries.topLeftCorner(nl, nl).cwiseAbs().maxCoeff() > 0.0);
  }
}

TEST_CASE("dipole truncation reproduces the closed-form summand per frequency") {
  // Sum over m of tr M at lmax = 1 equals 3 (rho_E + rho_M) int_1^inf u^2 e^{-a u} du.
  for (double K : {0.01, 0.3, 2.0}) {
    RoundTripOperator op(dipole_geom, PerfectReflector{}, 1, K);
    const double trace = op.block(0).entries.trace() + 2.0 * op.block(1).entries.trace();
    const auto rho = mie::sphere_reflection(PerfectReflector{}, 1, K, dipole_geom.R);
    const double a = 2.0 * K * dipole_geom.center_distance();
    const double integral = std::exp(-a) * (a * a + 2.0 * a + 2.0) / (a * a * a);
    const double expected = 3.0 * (std::exp(rho.log_electric[1]) + std::exp(rho.log_magnetic[1])) * integral;
    CHECK(trace == doctest::Approx(expected).epsilon(1e-12));
    const double ld = log_det_one_minus(op.block(0)) + 2.0 * log_det_one_minus(op.block(1));
    CHECK(ld == doctest::Approx(-expected).epsilon(1e-4));
  }
}

TEST_CASE("doubling the quadrature order changes entries by < 1e-10") {
  const Geometry g{1.0, 3.0};
  const MaterialModel models[] = {PerfectReflector{}, Plasma{0.136}, Drude{0.136, 34.0}};
  for (const auto& model : models) {
    for (double K : {0.05, 1.0, 10.0}) {
      for (int m : {0, 3, 9}) {
        const int lmax = 21;
        const int order = default_quadrature_order(lmax);
        const RoundTripBlock a = assemble_block(m, K, g, model, lmax, {order});
        const RoundTripBlock b = assemble_block(m, K, g, model, lmax, {2 * order});
        const double scale = a.entries.cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < a.entries.rows(); ++i) {
          for (Eigen::Index j = 0; j < a.entries.cols(); ++j) {
            const double x = a.entries(i, j);
            const double y = b.entries(i, j);
            // Entries that are pure rounding noise are compared to the block scale.
            CHECK(std::abs(x - y) <= 1e-10 * std::max(std::abs(y), 1e-6 * scale));
          }
        }
      }
    }
  }
}

TEST_CASE("static block matches the extrapolated small-frequency block") {
  const Geometry g{1.0, 1.5};
  const MaterialModel models[] = {PerfectReflector{}, Plasma{0.136}, Drude{0.136, 34.0}};
  for (const auto& model : models) {
    for (int m : {0, 1, 4}) {
      const int lmax = 8;
      const RoundTripBlock s = assemble_block_static(m, g, model, lmax);
      // Drude reaches its static form only once sigma0 K << 1/(L+R)^2.
      const bool drude = std::holds_alternative<Drude>(model);
      const double x1 = drude ? 1e-8 : 1e-4;
      const double x2 = drude ? 1e-9 : 1e-5;
      const RoundTripBlock b1 = assemble_block(m, x1 / g.R, g, model, lmax);
      const RoundTripBlock b2 = assemble_block(m, x2 / g.R, g, model, lmax);
      // Linear Richardson extrapolation to x = 0.
      const Eigen::MatrixXd extrapolated = (x1 * b2.entries - x2 * b1.entries) / (x1 - x2);
      const double scale = s.entries.cwiseAbs().maxCoeff();
      CHECK((extrapolated - s.entries).cwiseAbs().maxCoeff() <= 1e-6 * scale);
    }
  }
}

TEST_CASE("Drude static block has vanishing magnetic rows; perfect has both") {
  const Geometry g{1.0, 1.0};
  const RoundTripBlock d = assemble_block_static(1, g, Drude{0.136, 34.0}, 6);
  const int nl = static_cast<int>(d.dimension() / 2);
  CHECK(d.entries.bottomRows(nl).cwiseAbs().maxCoeff() == 0.0);
  CHECK(d.entries.topRows(nl).cwiseAbs().maxCoeff() > 0.0);
  const RoundTripBlock p = assemble_block_static(1, g, PerfectReflector{}, 6);
  CHECK(p.entries.bottomRightCorner(nl, nl).cwiseAbs().maxCoeff() > 0.0);
  CHECK(p.entries.topLeftCorner(nl, nl).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("analytic derivative of a block matches finite differences") {
  const MaterialModel models[] = {PerfectReflector{}, Plasma{0.136}};
  for (const auto& model : models) {
    for (double K : {0.0, 0.8}) {
      const double R = 1.0;
      const double L = 0.6;
      const double h = 1e-5;
      const auto block = [&](double l, bool d) {
        return RoundTripOperator({l, R}, model, 10, K).block(2, d);
      };
      const RoundTripBlock b = block(L, true);
      const double ld = log_det_one_minus_with_derivative(b).derivative;
      const double fd = (log_det_one_minus(block(L + h, false)) - log_det_one_minus(block(L - h, false))) / (2 * h);
      CHECK(ld == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("log-det of trivial matrices") {
  CHECK(log_det_one_minus(Eigen::MatrixXd::Zero(5, 5)) == 0.0);
  Eigen::MatrixXd one(1, 1);
  for (double mu : {1e-9, 0.3, 0.9}) {
    one(0, 0) = mu;
    CHECK(log_det_one_minus(one) == doctest::Approx(std::log1p(-mu)).epsilon(1e-14));
  }
  one(0, 0) = 1.5;
  CHECK_THROWS_AS(log_det_one_minus(one), SpectralRadiusError);
  one(0, 0) = std::nan("");
  CHECK_THROWS_AS(log_det_one_minus(one), std::invalid_argument);
}

TEST_CASE("log-det of random 70x70 contractions matches the eigenvalue sum") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double radius : {0.005, 0.5, 0.95}) {
    Eigen::MatrixXd m(70, 70);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
    const Eigen::VectorXcd ev0 = Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues();
    m *= radius / ev0.cwiseAbs().maxCoeff();
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues();
    std::complex<double> sum = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) sum += std::log(1.0 - ev(i));
    CHECK(log_det_one_minus(m) == doctest::Approx(sum.real()).epsilon(1e-10));
  }
}

TEST_CASE("physical blocks are passive: 0 < det(1 - M) <= 1") {
  const Geometry g{0.5, 5.0};
  for (double K : {0.0, 0.1, 2.0}) {
    RoundTripOperator op(g, PerfectReflector{}, 30, K);
    for (int m : {0, 1, 10}) {
      const double ld = log_det_one_minus(op.block(m));
      CHECK(ld < 0.0);
      CHECK(std::isfinite(ld));
    }
  }
}

TEST_CASE("flipping the electric sign breaks symmetry but keeps the block finite") {
  RoundTripOperator op(dipole_geom, PerfectReflector{}, 3, 0.5, {}, true);
  const RoundTripBlock b = op.block(1, true);
  CHECK_FALSE(b.symmetric);
  CHECK(std::isfinite(log_det_one_minus_with_derivative(b).value));
}

TEST_CASE("truncation is monotone in lmax") {
  const Geometry g{1.0, 2.0};
  double prev = 0.0;
  for (int lmax = 4; lmax <= 22; lmax += 6) {
    RoundTripOperator op(g, PerfectReflector{}, lmax, 0.4);
    const double ld = std::abs(log_det_one_minus(op.block(1)));
    CHECK(ld >= prev);
    prev = ld;
  }
}
