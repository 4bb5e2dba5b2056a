#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "casimir/materials.hpp"
#include "casimir/units.hpp"

using namespace casimir;
using namespace casimir::materials;

namespace {
const Drude gold_like{0.136, 250.0 * 0.136};
const Plasma plasma{0.136};
}  // namespace

TEST_CASE("thermal wavelength at room temperature is about 7.6 um") {
  const double lambda = units::thermal_wavelength_um(300.0);
  CHECK(lambda == doctest::Approx(7.6).epsilon(0.01));
  CHECK(lambda == doctest::Approx(7.6330).epsilon(1e-4));
  CHECK(std::isinf(units::thermal_wavelength_um(0.0)));
  CHECK_THROWS(units::thermal_wavelength_um(-1.0));
}

TEST_CASE("Drude permittivity at xi = gamma") {
  const double gamma = 2.0 * std::numbers::pi / gold_like.relaxation_wavelength;
  CHECK(permittivity(gold_like, gamma) == doctest::Approx(31251.0).epsilon(1e-12));
}

TEST_CASE("plasma permittivity at the plasma frequency is 2") {
  CHECK(permittivity(plasma, plasma_wavenumber(0.136)) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("permittivity tends to 1 at high frequency and decreases monotonically") {
  CHECK(permittivity(gold_like, 1e9) == doctest::Approx(1.0).epsilon(1e-9));
  double prev = permittivity(gold_like, 1e-6);
  for (double K = 2e-6; K < 1e4; K *= 3.0) {
    const double e = permittivity(gold_like, K);
    CHECK(e < prev);
    CHECK(e >= 1.0);
    prev = e;
  }
}

TEST_CASE("permittivity rejects zero frequency and the perfect reflector") {
  CHECK_THROWS_AS(permittivity(gold_like, 0.0), std::domain_error);
  CHECK_FALSE(permittivity_or_divergent(gold_like, 0.0).has_value());
  CHECK_THROWS(permittivity(PerfectReflector{}, 1.0));
}

TEST_CASE("model validation") {
  CHECK_THROWS(validate(MaterialModel{Plasma{-1.0}}));
  CHECK_THROWS(validate(MaterialModel{Drude{0.1, 0.0}}));
  CHECK_NOTHROW(validate(MaterialModel{gold_like}));
  CHECK(describe(gold_like) == "drude");
  CHECK(reduced_conductivity(gold_like) > 0.0);
}

TEST_CASE("perfect reflector amplitudes are -1 and +1") {
  for (double K : {0.0, 0.1, 10.0}) {
    const auto r = fresnel(PerfectReflector{}, K, 1.3);
    CHECK(r.te == -1.0);
    CHECK(r.tm == 1.0);
  }
}

TEST_CASE("zero-frequency amplitudes") {
  const auto d = fresnel_zero_frequency(gold_like, 2.0);
  CHECK(d.te == 0.0);
  CHECK(d.tm == 1.0);

  const double k = 1.7;
  const double wp = plasma_wavenumber(0.136);
  const auto p = fresnel_zero_frequency(plasma, k);
  const double root = std::sqrt(k * k + wp * wp);
  CHECK(p.te == doctest::Approx((k - root) / (k + root)).epsilon(1e-14));
  CHECK(p.tm == 1.0);

  // k >> omega_P/c: r_TE ~ -omega_P^2 / (4 k^2 c^2)
  const double big = 1e4 * wp;
  CHECK(fresnel_zero_frequency(plasma, big).te == doctest::Approx(-wp * wp / (4.0 * big * big)).epsilon(1e-6));
}

TEST_CASE("zero-frequency limits agree with small-frequency extrapolation") {
  const double k = 3.0;
  for (const MaterialModel& m : {MaterialModel{plasma}, MaterialModel{gold_like}}) {
    // Drude r_TE is linear in K only once sigma0 K << k^2.
    const double K1 = 1e-9;
    const auto r1 = fresnel(m, K1, k);
    const auto r2 = fresnel(m, 0.5 * K1, k);
    const auto r0 = fresnel_zero_frequency(m, k);
    // Linear Richardson step in K.
    const double te = 2.0 * r2.te - r1.te;
    const double tm = 2.0 * r2.tm - r1.tm;
    CHECK(tm == doctest::Approx(r0.tm).epsilon(1e-6));
    if (r0.te != 0.0) {
      CHECK(te == doctest::Approx(r0.te).epsilon(1e-6));
    } else {
      CHECK(std::abs(te) < 1e-6);
    }
  }
}

TEST_CASE("amplitudes are bounded: r_TM and -r_TE in [0, 1]") {
  for (const MaterialModel& m : {MaterialModel{plasma}, MaterialModel{gold_like}}) {
    for (double K : {1e-4, 0.1, 1.0, 50.0, 1e4}) {
      for (double k : {0.0, 1e-3, 1.0, 100.0}) {
        const auto r = fresnel(m, K, k);
        CHECK(r.tm >= 0.0);
        CHECK(r.tm <= 1.0);
        CHECK(-r.te >= 0.0);
        CHECK(-r.te <= 1.0);
      }
    }
  }
}

TEST_CASE("Drude amplitudes approach plasma amplitudes as relaxation vanishes") {
  const Drude nearly_plasma{0.136, 1e6 * 0.136};
  for (double K : {0.05, 1.0, 20.0}) {
    for (double k : {0.1, 5.0}) {
      const auto d = fresnel(nearly_plasma, K, k);
      const auto p = fresnel(plasma, K, k);
      CHECK(d.te == doctest::Approx(p.te).epsilon(1e-4));
      CHECK(d.tm == doctest::Approx(p.tm).epsilon(1e-4));
    }
  }
  // At exactly zero frequency the limits differ.
  CHECK(fresnel_zero_frequency(nearly_plasma, 1.0).te == 0.0);
  CHECK(fresnel_zero_frequency(plasma, 1.0).te < -0.5);
}

TEST_CASE("reduced Fresnel form stays finite for huge permittivity") {
  const auto r = fresnel_reduced(1e300, 1e12);
  CHECK(std::isfinite(r.te));
  CHECK(std::isfinite(r.tm));
  CHECK(r.tm == doctest::Approx(1.0));
}
