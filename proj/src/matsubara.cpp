#include "casimir/matsubara.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace casimir::matsubara {

int default_worker_count() {
  if (const char* env = std::getenv("CASIMIR_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 4096L));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

int initial_cutoff(double separation, double thermal_wavelength) {
  const double n = 5.0 * thermal_wavelength / (4.0 * std::numbers::pi * separation);
  return std::max(4, static_cast<int>(std::ceil(n)));
}

double asymptotic_ratio(double separation, double thermal_wavelength) {
  return std::exp(-4.0 * std::numbers::pi * separation / thermal_wavelength);
}

namespace {

double tail_estimate(const std::vector<double>& terms, double floor_ratio) {
  const std::size_t n = terms.size();
  if (n < 2) return std::abs(terms.back());
  const double last = std::abs(terms[n - 1]);
  const double prev = std::abs(terms[n - 2]);
  if (last == 0.0) return 0.0;
  double r = prev > 0.0 ? last / prev : 1.0;
  r = std::max(r, floor_ratio);
  if (r >= 1.0) return std::numeric_limits<double>::infinity();
  return last * r / (1.0 - r);
}

}  // namespace

SeriesResult matsubara_sum(const std::function<FrequencyTerm(int)>& term,
                           double separation, double thermal_wavelength,
                           const SeriesOptions& options) {
  if (!(separation > 0.0) || !(thermal_wavelength > 0.0) || !std::isfinite(thermal_wavelength)) {
    throw std::invalid_argument("Matsubara sum needs L > 0 and finite lambda_T > 0");
  }
  const double floor_ratio = asymptotic_ratio(separation, thermal_wavelength);
  std::vector<double> values;
  std::vector<double> derivs;
  int m_max = 0;

  auto extend = [&](int upto) {
    const int start = static_cast<int>(values.size());
    if (upto < start) return;
    const auto batch = parallel_map(static_cast<std::size_t>(upto - start + 1), options.workers,
                                    [&](std::size_t i) { return term(start + static_cast<int>(i)); });
    for (const FrequencyTerm& t : batch) {
      const double w = values.empty() ? 0.5 : 1.0;
      values.push_back(w * t.log_det);
      derivs.push_back(w * t.derivative);
      m_max = std::max(m_max, t.m_max);
    }
  };

  auto finish = [&](double rel_error) {
    SeriesResult r;
    r.log_det = pairwise_sum(values);
    r.derivative = pairwise_sum(derivs);
    r.n_max = static_cast<int>(values.size()) - 1;
    r.m_max = m_max;
    r.rel_error = rel_error;
    return r;
  };

  auto relative_tail = [&]() {
    const double s = std::abs(pairwise_sum(values));
    double err = s > 0.0 ? tail_estimate(values, floor_ratio) / s : 0.0;
    if (options.track_derivative) {
      const double ds = std::abs(pairwise_sum(derivs));
      if (ds > 0.0) err = std::max(err, tail_estimate(derivs, floor_ratio) / ds);
    }
    return err;
  };

  if (options.frozen_n_max >= 0) {
    extend(options.frozen_n_max);
    return finish(values.size() >= 2 ? relative_tail() : 0.0);
  }

  const int n0 = initial_cutoff(separation, thermal_wavelength);
  extend(n0);
  const int step = std::max(4, n0 / 2);
  for (;;) {
    const double err = relative_tail();
    if (err <= options.tol) return finish(err);
    const int next = static_cast<int>(values.size()) - 1 + step;
    if (next > options.hard_limit) {
      throw std::runtime_error("Matsubara sum did not converge within " +
                               std::to_string(options.hard_limit) + " terms");
    }
    extend(next);
  }
}

}  // namespace casimir::matsubara
