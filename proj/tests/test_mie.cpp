#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <stdexcept>
#include <numbers>

#include "casimir/materials.hpp"
#include "casimir/mie.hpp"
#include "casimir/riccati.hpp"

using namespace casimir;
using namespace casimir::mie;

namespace {

double double_factorial(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

// Relative error of the leading low-frequency form at x and x/2.
template <class F>
std::pair<double, double> errors_at(F&& rel_error, double x) {
  return {rel_error(x), rel_error(0.5 * x)};
}

}  // namespace

TEST_CASE("first Riccati function at x = 1 equals 1/e") {
  const RiccatiTable t = riccati_pair(3, 1.0);
  CHECK(std::exp(t.log_s[1]) == doctest::Approx(std::cosh(1.0) - std::sinh(1.0)).epsilon(1e-14));
  CHECK(std::exp(t.log_s[1]) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(std::exp(t.log_e[1]) == doctest::Approx(std::exp(-1.0) * 2.0).epsilon(1e-14));
}

TEST_CASE("small-argument behaviour s_l ~ x^(l+1)/(2l+1)!!") {
  const double x = 1e-4;
  const RiccatiTable t = riccati_pair(8, x);
  for (int l = 1; l <= 8; ++l) {
    const double lead = std::pow(x, l + 1) / double_factorial(2 * l + 1);
    CHECK(std::exp(t.log_s[l]) == doctest::Approx(lead).epsilon(1e-7));
  }
}

TEST_CASE("Wronskian s e' - s' e = -1 at two arguments") {
  for (double x : {0.37, 25.0}) {
    const RiccatiTable t = riccati_pair(40, x);
    for (int l = 0; l <= 40; ++l) {
      const double w = std::exp(t.log_s[l] + t.log_e[l]) * (t.dlog_e[l] - t.dlog_s[l]);
      CHECK(w == doctest::Approx(-1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("Riccati functions match Boost modified Bessel functions") {
  for (double x : {0.05, 2.0, 40.0}) {
    const RiccatiTable t = riccati_pair(20, x);
    for (int l = 0; l <= 20; ++l) {
      const double nu = l + 0.5;
      const double s = std::sqrt(std::numbers::pi * x / 2.0) * boost::math::cyl_bessel_i(nu, x);
      const double e = std::sqrt(2.0 * x / std::numbers::pi) * boost::math::cyl_bessel_k(nu, x);
      CHECK(std::exp(t.log_s[l]) == doctest::Approx(s).epsilon(1e-12));
      CHECK(std::exp(t.log_e[l]) == doctest::Approx(e).epsilon(1e-12));
    }
  }
}

TEST_CASE("declared range x in [1e-3, 1e3], lmax 60 stays finite") {
  for (double x : {1e-3, 1.0, 1e3}) {
    const RiccatiTable t = riccati_pair(60, x);
    for (int l = 0; l <= 60; ++l) {
      CHECK(std::isfinite(t.log_s[l]));
      CHECK(std::isfinite(t.log_e[l]));
      CHECK(std::isfinite(t.dlog_s[l]));
      CHECK(std::isfinite(t.dlog_e[l]));
    }
  }
  CHECK_THROWS(riccati_pair(5, 0.0));
}

TEST_CASE("perfect reflector dipole coefficients: a1 -> -2x^3/3, b1 -> x^3/3") {
  const auto rel_a = [](double x) {
    return std::abs(mie_ab(PerfectReflector{}, 1, x, 1.0).a / (-2.0 * x * x * x / 3.0) - 1.0);
  };
  const auto rel_b = [](double x) {
    return std::abs(mie_ab(PerfectReflector{}, 1, x, 1.0).b / (x * x * x / 3.0) - 1.0);
  };
  for (double x : {1e-2, 1e-3, 1e-4}) {
    const auto [ea, ea_half] = errors_at(rel_a, x);
    const auto [eb, eb_half] = errors_at(rel_b, x);
    CHECK(ea <= 10.0 * x);
    CHECK(eb <= 10.0 * x);
    CHECK(ea_half <= 0.5 * ea * 1.01);
    CHECK(eb_half <= 0.5 * eb * 1.01);
  }
}

TEST_CASE("plasma magnetic dipole: b1 -> (1/3 + 1/alpha^2 - coth(alpha)/alpha) x^3") {
  const double lambda_p = 0.136;
  const double R = 0.2;
  const double alpha = 2.0 * std::numbers::pi * R / lambda_p;
  const double bracket = 1.0 / 3.0 + 1.0 / (alpha * alpha) - 1.0 / (std::tanh(alpha) * alpha);
  const auto rel = [&](double x) {
    return std::abs(mie_ab(Plasma{lambda_p}, 1, x / R, R).b / (bracket * x * x * x) - 1.0);
  };
  for (double x : {1e-2, 1e-3, 1e-4}) {
    const auto [e, e_half] = errors_at(rel, x);
    CHECK(e <= 10.0 * x);
    CHECK(e_half <= 0.5 * e * 1.01);
  }
  CHECK(mie_ab_zero_frequency(Plasma{lambda_p}, 1, R).b == doctest::Approx(bracket).epsilon(1e-12));
}

TEST_CASE("Drude dipole: b1 ~ sigma0 R x^4 / 45 and a1 ~ -2x^3/3 + 2x^4/(sigma0 R)") {
  const Drude model{0.136, 34.0};
  const double R = 1.0;
  const double sigma = materials::reduced_conductivity(model);
  for (double x : {1e-6, 1e-7}) {
    const MieCoefficients ab = mie_ab(model, 1, x / R, R);
    CHECK(ab.b == doctest::Approx(sigma * R * std::pow(x, 4) / 45.0).epsilon(2e-3));
    CHECK((ab.a + 2.0 * x * x * x / 3.0) == doctest::Approx(2.0 * std::pow(x, 4) / (sigma * R)).epsilon(1e-2));
  }
}

TEST_CASE("zero-frequency coefficients") {
  const auto perfect = mie_ab_zero_frequency(PerfectReflector{}, 1, 1.0);
  CHECK(perfect.a == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
  CHECK(perfect.b == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  const auto drude = mie_ab_zero_frequency(Drude{0.136, 34.0}, 1, 1.0);
  CHECK(drude.a == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
  CHECK(drude.b == 0.0);
  // alpha -> infinity recovers the perfect reflector.
  CHECK(mie_ab_zero_frequency(Plasma{1e-5}, 1, 10.0).b == doctest::Approx(1.0 / 3.0).epsilon(1e-5));
}

TEST_CASE("zero-frequency coefficients match full coefficients at small x for l > 1") {
  const MaterialModel models[] = {PerfectReflector{}, Plasma{0.136}, Drude{0.136, 34.0}};
  const double R = 0.5;
  for (const auto& model : models) {
    // The Drude magnetic channel starts at x^(2l+2) with a large prefactor
    // sigma0 R, so it needs a smaller argument to look static.
    const double x = std::holds_alternative<Drude>(model) ? 1e-9 : 1e-4;
    const double K = x / R;
    for (int l = 1; l <= 6; ++l) {
      const auto full = mie_ab(model, l, K, R);
      const auto lead = mie_ab_zero_frequency(model, l, R);
      const double scale = std::pow(x, 2 * l + 1);
      CHECK(full.a / scale == doctest::Approx(lead.a).epsilon(1e-3));
      if (lead.b != 0.0) {
        CHECK(full.b / scale == doctest::Approx(lead.b).epsilon(1e-3));
      } else {
        CHECK(std::abs(full.b / scale) < 1e-3);
      }
    }
  }
}

TEST_CASE("perfect reflector sign pattern a_l < 0 for odd l, b_l > 0 for odd l") {
  for (double x : {1e-3, 0.5, 5.0, 80.0}) {
    for (int l = 1; l <= 10; ++l) {
      const auto ab = mie_ab(PerfectReflector{}, l, x, 1.0);
      const double sign = (l % 2 == 1) ? 1.0 : -1.0;
      CHECK(sign * ab.a < 0.0);
      CHECK(sign * ab.b > 0.0);
    }
  }
}

TEST_CASE("Drude coefficients approach plasma ones at finite frequency only") {
  const Drude nearly{0.136, 1e6 * 0.136};
  const Plasma plasma{0.136};
  const double R = 1.0;
  for (double x : {1e-2, 0.3, 4.0}) {
    for (int l = 1; l <= 4; ++l) {
      const auto d = mie_ab(nearly, l, x / R, R);
      const auto p = mie_ab(plasma, l, x / R, R);
      CHECK(d.a == doctest::Approx(p.a).epsilon(1e-4));
      CHECK(d.b == doctest::Approx(p.b).epsilon(1e-4));
    }
  }
  CHECK(mie_ab_zero_frequency(nearly, 1, R).b == 0.0);
  CHECK(mie_ab_zero_frequency(plasma, 1, R).b > 0.3);
}
