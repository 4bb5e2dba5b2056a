#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace casimir::matsubara {

/// Worker count from CASIMIR_WORKERS if set to a positive integer, else the
/// hardware concurrency (at least 1).
int default_worker_count();

/// Pairwise summation in index order. The result depends only on the values
/// and their order, never on how they were produced.
double pairwise_sum(std::span<const double> values);

/// Evaluates f(0..count-1) on up to `workers` threads and returns the
/// results in index order. The first exception thrown by any call is
/// rethrown after all workers stop.
template <class F>
auto parallel_map(std::size_t count, int workers, F&& f)
    -> std::vector<decltype(f(std::size_t{}))> {
  using Result = decltype(f(std::size_t{}));
  std::vector<Result> out(count);
  const std::size_t threads =
      std::min<std::size_t>(count, static_cast<std::size_t>(workers > 1 ? workers : 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

/// Contribution of one Matsubara frequency, already summed over m.
struct FrequencyTerm {
  double log_det = 0.0;     // sum_m' ln det(1 - M^(m))
  double derivative = 0.0;  // d/d(L+R) of the above
  int m_max = 0;
};

struct SeriesOptions {
  double tol = 1e-8;
  int frozen_n_max = -1;  // >= 0 fixes the cutoff and skips adaptivity
  int workers = 1;
  bool track_derivative = false;
  int hard_limit = 200000;
};

struct SeriesResult {
  double log_det = 0.0;     // sum'_n, n = 0 with weight 1/2
  double derivative = 0.0;
  int n_max = 0;
  int m_max = 0;
  double rel_error = 0.0;   // estimated truncation remainder / |sum|
};

/// Initial cutoff ceil(5 lambda_T / (4 pi L)).
int initial_cutoff(double separation, double thermal_wavelength);

/// Asymptotic ratio of consecutive terms, exp(-4 pi L / lambda_T).
double asymptotic_ratio(double separation, double thermal_wavelength);

/// Adaptive primed Matsubara sum of term(n). Terms are evaluated in batches
/// on the worker pool; the series is cut once the geometric tail bound
/// (ratio max(observed, asymptotic)) falls below tol times the sum.
/// Throws std::runtime_error when hard_limit terms do not suffice.
SeriesResult matsubara_sum(const std::function<FrequencyTerm(int)>& term,
                           double separation, double thermal_wavelength,
                           const SeriesOptions& options);

}  // namespace casimir::matsubara
