#include "casimir/validation.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "casimir/asymptotics.hpp"
#include "casimir/pfa.hpp"
#include "casimir/roundtrip.hpp"
#include "casimir/thermodynamics.hpp"
#include "casimir/units.hpp"

namespace casimir::validation {

namespace {

constexpr double room_temperature = 300.0;
constexpr double reference_plasma_wavelength = 0.136;
const Drude reference_drude{reference_plasma_wavelength, 250.0 * reference_plasma_wavelength};
const Plasma reference_plasma{reference_plasma_wavelength};

SolverOptions solver(const ValidationOptions& v) {
  SolverOptions o;
  o.tol = v.tol;
  o.workers = v.workers;
  o.lmax = v.lmax;
  o.flip_electric_sign = v.flip_electric_sign;
  return o;
}

std::string sci(double v, int digits = 3) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(digits) << v;
  return s.str();
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

double rel_dev(double value, double reference) { return std::abs(value / reference - 1.0); }

CheckResult timed(int criterion, std::string name, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.criterion = criterion;
  r.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.measured = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// Force at T and at T = 0 with matched truncation; returns (theta, theta_pfa).
std::pair<double, double> thetas(double L, double R, const MaterialModel& model,
                                 const ValidationOptions& v) {
  const double theta = thermo::theta_ratio({L, R}, model, room_temperature, solver(v));
  const double theta_pfa = pfa::pfa_theta(L, room_temperature, model);
  return {theta, theta_pfa};
}

}  // namespace

CheckResult check_dipole_oracle(const ValidationOptions& v) {
  return timed(1, "dipole oracle (perfect reflector, R/L = 0.01 and 0.005)", [&](CheckResult& r) {
    bool ok = true;
    double worst = 0.0;
    double worst_surface = 0.0;
    double worst_shrink = 1e300;
    const auto start = std::chrono::steady_clock::now();
    for (double L : {2.0, 5.0, 10.0}) {
      double dev[2];
      int k = 0;
      for (double q : {0.01, 0.005}) {
        const Geometry g{L, q * L};
        const double F = thermo::free_energy(g, PerfectReflector{}, room_temperature, solver(v)).free_energy;
        // The dipole formula is evaluated at the centre distance L + R.
        const double oracle = asymptotics::free_energy_perfect_dipole(g.center_distance(), g.R, room_temperature);
        dev[k++] = rel_dev(F, oracle);
        if (q == 0.01) {
          worst_surface = std::max(
              worst_surface, rel_dev(F, asymptotics::free_energy_perfect_dipole(L, g.R, room_temperature)));
        }
      }
      worst = std::max(worst, dev[0]);
      const double shrink = dev[0] / dev[1];
      worst_shrink = std::min(worst_shrink, shrink);
      ok = ok && dev[0] <= 1e-2 && shrink >= 2.0;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.passed = ok && seconds < 60.0;
    r.measured = "max deviation " + sci(worst) + ", min shrink factor " + fixed(worst_shrink, 2) +
                 " (formula at surface distance L: " + sci(worst_surface) + "), " + fixed(seconds, 1) + " s";
    r.expected = "deviation <= 1e-2, shrink >= 2, runtime < 60 s";
  });
}

CheckResult check_entropy_sign(const ValidationOptions& v) {
  CheckResult r = timed(2, "entropy sign change (perfect reflector, R/L = 0.01)", [&](CheckResult& r) {
    const auto s_at = [&](double L) {
      return thermo::entropy({L, 0.01 * L}, PerfectReflector{}, room_temperature, solver(v)).entropy;
    };
    const double s1 = s_at(1.0);
    const double s5 = s_at(5.0);
    const auto f = [](double nu) {
      return asymptotics::phi(nu) + nu * asymptotics::phi_prime(nu);
    };
    boost::math::tools::eps_tolerance<double> tol(40);
    std::uintmax_t iters = 100;
    const auto bracket = boost::math::tools::toms748_solve(f, 0.5, 3.0, tol, iters);
    const double root = 0.5 * (bracket.first + bracket.second);
    const double closed1 = asymptotics::entropy_perfect_dipole(1.0, 0.01, room_temperature);
    r.passed = s1 < 0.0 && s5 > 0.0 && std::abs(root - 1.5) <= 0.1;
    r.measured = "S(1 um) = " + sci(s1 * units::energy_unit_J) + " J/K, S(5 um) = " +
                 sci(s5 * units::energy_unit_J) + " J/K, root nu = " + fixed(root, 5) +
                 ", S(1 um)/closed form = " + fixed(s1 / closed1, 4);
    r.expected = "S(1 um) < 0, S(5 um) > 0, root 1.5 +- 0.1";
  });
  return r;
}

CheckResult check_high_temperature_ratios(const ValidationOptions& v) {
  return timed(3, "high-temperature Drude/perfect ratios (L = 50 um)", [&](CheckResult& r) {
    const Geometry g{50.0, 2.0};
    const double drude = thermo::free_energy(g, reference_drude, room_temperature, solver(v)).free_energy;
    const double perfect = thermo::free_energy(g, PerfectReflector{}, room_temperature, solver(v)).free_energy;
    const double sphere = drude / perfect;
    const double plane = pfa::lifshitz_energy_per_area(50.0, room_temperature, reference_drude).energy_per_area /
                         pfa::lifshitz_energy_per_area(50.0, room_temperature, PerfectReflector{}).energy_per_area;
    r.passed = std::abs(sphere - 2.0 / 3.0) <= 0.02 && std::abs(plane - 0.5) <= 0.005;
    r.measured = "plane-sphere " + fixed(sphere, 5) + ", plane-plane " + fixed(plane, 5);
    r.expected = "2/3 +- 0.02, 1/2 +- 0.005";
  });
}

CheckResult check_plasma_drude_ratio(const ValidationOptions& v) {
  return timed(4, "plasma/Drude force ratio (L = 30-50 um)", [&](CheckResult& r) {
    bool ok = true;
    std::string big, small, plane;
    for (double L : {30.0, 40.0, 50.0}) {
      const auto ratio = [&](double R) {
        const Geometry g{L, R};
        return thermo::force(g, reference_plasma, room_temperature, solver(v)).force /
               thermo::force(g, reference_drude, room_temperature, solver(v)).force;
      };
      const double r_big = ratio(2.0);
      const double r_small = ratio(0.1);
      const double r_pfa = pfa::pfa_force(L, 1.0, room_temperature, reference_plasma) /
                           pfa::pfa_force(L, 1.0, room_temperature, reference_drude);
      ok = ok && std::abs(r_big - 1.5) <= 0.05 && r_small <= 1.3 && std::abs(r_pfa - 2.0) <= 0.02;
      big += (big.empty() ? "" : ", ") + fixed(r_big, 4);
      small += (small.empty() ? "" : ", ") + fixed(r_small, 4);
      plane += (plane.empty() ? "" : ", ") + fixed(r_pfa, 4);
    }
    r.passed = ok;
    r.measured = "R = 2 um: " + big + "; R = 100 nm: " + small + "; PFA: " + plane;
    r.expected = "3/2 +- 0.05; <= 1.3; 2 +- 0.02";
  });
}

CheckResult check_pfa_orderings(const ValidationOptions& v) {
  return timed(5, "PFA temperature-effect orderings", [&](CheckResult& r) {
    bool perfect_ok = true;
    double min_gap = 1e300;
    for (double R : {0.2, 1.0, 2.0}) {
      for (double L : {0.2, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        const auto [theta, theta_pfa] = thetas(L, R, PerfectReflector{}, v);
        min_gap = std::min(min_gap, theta_pfa - theta);
        perfect_ok = perfect_ok && theta_pfa >= theta;
      }
    }
    bool drude_ok = true;
    std::string drude;
    for (double R : {0.2, 1.0, 2.0}) {
      for (double L : {0.2, 0.5, 10.0, 20.0}) {
        const auto [theta, theta_pfa] = thetas(L, R, reference_drude, v);
        const bool ok = L <= 0.5 ? theta_pfa < theta : theta_pfa > theta;
        drude_ok = drude_ok && ok;
        if (!ok) drude += " (R=" + fixed(R, 1) + ",L=" + fixed(L, 1) + " fails)";
      }
    }
    r.passed = perfect_ok && drude_ok;
    r.measured = "perfect: min(theta_PFA - theta) = " + sci(min_gap) +
                 "; Drude orderings " + (drude_ok ? std::string("hold") : "violated" + drude);
    r.expected = "theta_PFA >= theta (perfect); Drude theta_PFA < theta at L <= 0.5 um, > at L >= 10 um";
  });
}

CheckResult check_pfa_closed_form(const ValidationOptions&) {
  return timed(6, "zero-temperature PFA closed form", [&](CheckResult& r) {
    double worst = 0.0;
    for (double L : {0.1, 1.0, 10.0}) {
      for (double R : {0.5, 2.0}) {
        const double exact = std::pow(std::numbers::pi, 3) * R / (360.0 * std::pow(L, 3));
        worst = std::max(worst, rel_dev(pfa::pfa_force(L, R, 0.0, PerfectReflector{}), exact));
      }
    }
    r.passed = worst <= 1e-6;
    r.measured = "max relative deviation " + sci(worst);
    r.expected = "<= 1e-6";
  });
}

CheckResult check_internal_numerics(const ValidationOptions& v) {
  return timed(7, "internal numerics (FD force, log-det, lmax convergence)", [&](CheckResult& r) {
    // (a) analytic force against a central difference of the free energy.
    double worst_fd = 0.0;
    const MaterialModel models[] = {PerfectReflector{}, reference_plasma, reference_drude};
    for (double L : {0.1, 1.0, 10.0}) {
      for (double q : {0.1, 1.0, 5.0}) {
        for (const MaterialModel& model : models) {
          const Geometry g{L, q * L};
          const ThermalResult base = thermo::force(g, model, room_temperature, solver(v));
          SolverOptions frozen = solver(v);
          frozen.lmax = base.report.lmax;
          frozen.quad_order = base.report.quad_order;
          frozen.frozen_n_max = base.report.n_max;
          frozen.frozen_m_max = base.report.m_max;
          const double h = 1e-4 * L;
          const double up = thermo::free_energy({L + h, g.R}, model, room_temperature, frozen).free_energy;
          const double down = thermo::free_energy({L - h, g.R}, model, room_temperature, frozen).free_energy;
          worst_fd = std::max(worst_fd, rel_dev((up - down) / (2.0 * h), base.force));
        }
      }
    }

    // (b) log-det against the eigenvalue sum on random contractions.
    double worst_ld = 0.0;
    std::mt19937_64 rng(20090101);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 5; ++trial) {
      const int n = 70;
      Eigen::MatrixXd m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = normal(rng);
      if (trial % 2 == 1) m = (m * m.transpose()).eval();
      const double radius = Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues().cwiseAbs().maxCoeff();
      m *= (0.3 + 0.15 * trial) / radius;
      const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues();
      std::complex<double> sum = 0.0;
      for (Eigen::Index i = 0; i < ev.size(); ++i) sum += std::log(1.0 - ev(i));
      worst_ld = std::max(worst_ld, rel_dev(roundtrip::log_det_one_minus(m), sum.real()));
    }

    // (c) multipole truncation at R/L = 5.
    SolverOptions o24 = solver(v);
    o24.lmax = 24;
    SolverOptions o30 = solver(v);
    o30.lmax = 30;
    const Geometry g{1.0, 5.0};
    const double f24 = thermo::free_energy(g, PerfectReflector{}, room_temperature, o24).free_energy;
    const double f30 = thermo::free_energy(g, PerfectReflector{}, room_temperature, o30).free_energy;
    const double lmax_change = rel_dev(f24, f30);

    r.passed = worst_fd <= 1e-6 && worst_ld <= 1e-10 && lmax_change < 1e-3;
    r.measured = "FD force " + sci(worst_fd) + ", log-det " + sci(worst_ld) + ", lmax 24->30 " +
                 sci(lmax_change);
    r.expected = "<= 1e-6, <= 1e-10, < 1e-3";
  });
}

CheckResult check_low_temperature_series(const ValidationOptions& v) {
  return timed(8, "low-temperature series at nu = 0.3 (R/L = 0.01)", [&](CheckResult& r) {
    const double L = 1.0;
    const Geometry g{L, 0.01 * L};
    const double nu = 0.3;
    // nu = 2 pi (L + R) / lambda_T fixes the temperature.
    const double lambda = 2.0 * std::numbers::pi * g.center_distance() / nu;
    const double T = units::hbar * units::speed_of_light /
                     (units::boltzmann * lambda * units::metres_per_um);
    const double series = asymptotics::low_temperature_series(nu);
    const auto ratio = [&](int lmax) {
      SolverOptions o = solver(v);
      o.lmax = lmax;
      const double hot = thermo::free_energy(g, PerfectReflector{}, T, o).free_energy;
      const double cold = thermo::zero_temperature(g, PerfectReflector{}, o).free_energy;
      return hot / cold;
    };
    const double dipole = rel_dev(ratio(1), series);
    const double full = rel_dev(ratio(v.lmax), series);
    r.passed = dipole <= 1e-4 && full <= 1e-4;
    r.measured = "dipole pipeline " + sci(dipole) + ", full pipeline " + sci(full);
    r.expected = "<= 1e-4";
  });
}

std::vector<CheckResult> run_all(const ValidationOptions& options, std::ostream* progress) {
  using Check = CheckResult (*)(const ValidationOptions&);
  const Check checks[] = {check_dipole_oracle,       check_entropy_sign,     check_high_temperature_ratios,
                          check_plasma_drude_ratio,  check_pfa_orderings,    check_pfa_closed_form,
                          check_internal_numerics,   check_low_temperature_series};
  std::vector<CheckResult> out;
  for (const Check c : checks) {
    out.push_back(c(options));
    if (progress) *progress << format(out.back()) << std::endl;
  }
  return out;
}

std::string format(const CheckResult& r) {
  std::ostringstream s;
  s << (r.passed ? "PASS" : "FAIL") << " [" << r.criterion << "] " << r.name << ": " << r.measured
    << " | expected " << r.expected << " (" << std::fixed << std::setprecision(1) << r.seconds << " s)";
  return s.str();
}

}  // namespace casimir::validation
