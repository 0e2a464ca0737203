#pragma once

// Monte-Carlo comparison of the one-step predictor with and without the
// near-ideal prefilter on random-coefficient AR(1)/AR(2) paths.
//
// For every trial the forecast y(t-1) of x(t) is scored by
//
//   e(b1, b2) = ||y(t-1) - x(t)|| / ||b1 x(t-1) + b2 x(t-2) - x(t)||,  t = 1..n,
//
// once with the true coefficients (oracle) and once with the population
// means (0.5, 0).

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "nearideal/arsim.hpp"
#include "nearideal/error.hpp"
#include "nearideal/realization.hpp"
#include "nearideal/stream.hpp"
#include "nearideal/xfer.hpp"

namespace nearideal {

enum class ModelKind { kAr1, kAr2 };

/// How the prefiltered predictor kernel is formed.
///   kDWindow:    inverse transform of K H_a, truncated to lags 0..d
///   kTwoDWindow: k_d convolved with h_{a,d}, lags 0..2d
enum class CompositeWindow { kDWindow, kTwoDWindow };

struct BenchConfig {
  int trials = 10000;
  int n = 100;
  int d = 100;
  double sigma = 0.3;
  ModelKind model_kind = ModelKind::kAr2;
  PredictorParams predictor{1.1, 1.1};
  NearIdealParams prefilter{0.6, 0.7, 100, 2};
  std::size_t grid = kDefaultGrid;
  std::uint64_t master_seed = 1;
  CompositeWindow composite_window = CompositeWindow::kDWindow;
  std::size_t burn_in = 1000;
  double baseline_b1 = 0.5;
  double baseline_b2 = 0.0;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const {
    detail::require(trials >= 1, "bench: trials must be >= 1");
    detail::require(n >= 1, "bench: n must be >= 1");
    detail::require(d >= 1, "bench: d must be >= 1");
    detail::require(sigma > 0.0, "bench: sigma must be > 0");
    detail::require(grid >= 16 && std::has_single_bit(grid), "bench: grid must be a power of two >= 16");
    detail::require(static_cast<std::size_t>(d) + 1 <= grid / 2, "bench: d + 1 must not exceed grid / 2");
  }
};

struct BenchKernels {
  Kernel predictor;    // k_d
  Kernel prefiltered;  // (k h_a)_d, per composite_window
};

struct TrialResult {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double e_kk_oracle = 0.0;
  double e_kh_oracle = 0.0;
  double e_kk_mean = 0.0;
  double e_kh_mean = 0.0;
  int resamples = 0;
};

/// Intermediate series of one trial: the simulated path and both forecasts
/// (y(t) is the forecast of x(t+1)).
struct TrialTrace {
  TrialResult result;
  Series x;
  Series y_kk;
  Series y_kh;
};

struct MetricSummary {
  double mean = 0.0;
  double se = 0.0;
  int count = 0;
};

struct BenchReport {
  BenchConfig config;
  MetricSummary e_kk_oracle;
  MetricSummary e_kh_oracle;
  MetricSummary e_kk_mean;
  MetricSummary e_kh_mean;
  long long total_resamples = 0;
  double seconds = 0.0;
  std::vector<TrialResult> trials;  // ascending trial index
};

/// Ratio of the forecast error of y to that of the linear predictor
/// b1 x(t-1) + b2 x(t-2), both over t = 1..n.
inline double error_ratio(const Series& y, const Series& x, double b1, double b2, int n) {
  detail::require(n >= 1, "error_ratio: n must be >= 1");
  detail::require(x.contains(-1) && x.contains(n), "error_ratio: x must cover t = -1..n");
  detail::require(y.contains(0) && y.contains(n - 1), "error_ratio: y must cover t = 0..n-1");
  double num = 0.0;
  double den = 0.0;
  for (std::int64_t t = 1; t <= n; ++t) {
    const double e_pred = y.at(t - 1) - x.at(t);
    const double e_lin = b1 * x.at(t - 1) + b2 * x.at(t - 2) - x.at(t);
    num += e_pred * e_pred;
    den += e_lin * e_lin;
  }
  const double den_norm = std::sqrt(den);
  if (den_norm < 1e-300) throw DegenerateDenominator("error_ratio: reference predictor error is zero");
  return std::sqrt(num) / den_norm;
}

/// Realizes k_d and the prefiltered kernel once per configuration.
inline BenchKernels make_bench_kernels(const BenchConfig& cfg) {
  cfg.validate();
  const auto d = static_cast<std::size_t>(cfg.d);
  const TransferSpec k_spec(cfg.predictor);
  Kernel k_d = truncate(impulse_from_spec(k_spec, cfg.grid, d + 1), d);
  if (cfg.composite_window == CompositeWindow::kDWindow) {
    const auto kh_spec = TransferSpec::product({k_spec, TransferSpec(cfg.prefilter)});
    Kernel kh_d = truncate(impulse_from_spec(kh_spec, cfg.grid, d + 1), d);
    return {std::move(k_d), std::move(kh_d)};
  }
  const Kernel h_d = truncate(impulse_from_spec(TransferSpec(cfg.prefilter), cfg.grid, d + 1), d);
  Kernel kh = compose(k_d, h_d);
  return {std::move(k_d), std::move(kh)};
}

/// First simulated time index: one sample before the longest kernel reaches
/// when forecasting x(1) from y(0).
inline std::int64_t trial_start_index(const BenchKernels& kernels) {
  const auto longest = std::max(kernels.predictor.support(), kernels.prefiltered.support());
  return -static_cast<std::int64_t>(longest) - 1;
}

inline TrialTrace run_trial_traced(const BenchConfig& cfg, std::uint64_t trial_index,
                                   const BenchKernels& kernels) {
  TrialRng rng(cfg.master_seed, trial_index);
  TrialResult res;
  if (cfg.model_kind == ModelKind::kAr2) {
    const auto draw = sample_stationary_ar2(rng);
    res.beta1 = draw.coeffs.beta1;
    res.beta2 = draw.coeffs.beta2;
    res.resamples = draw.resamples;
  } else {
    res.beta1 = rng.uniform();
    res.beta2 = 0.0;
  }

  const ArModel model(res.beta1, res.beta2, cfg.sigma);
  const std::int64_t start = trial_start_index(kernels);
  const auto length = static_cast<std::size_t>(cfg.n - start + 1);  // t = start..n
  Series x = simulate_ar(model, start, length, cfg.burn_in, rng);
  Series y_kk = convolve(kernels.predictor, x);
  Series y_kh = convolve(kernels.prefiltered, x);

  res.e_kk_oracle = error_ratio(y_kk, x, res.beta1, res.beta2, cfg.n);
  res.e_kh_oracle = error_ratio(y_kh, x, res.beta1, res.beta2, cfg.n);
  res.e_kk_mean = error_ratio(y_kk, x, cfg.baseline_b1, cfg.baseline_b2, cfg.n);
  res.e_kh_mean = error_ratio(y_kh, x, cfg.baseline_b1, cfg.baseline_b2, cfg.n);
  return {res, std::move(x), std::move(y_kk), std::move(y_kh)};
}

inline TrialResult run_trial(const BenchConfig& cfg, std::uint64_t trial_index, const BenchKernels& kernels) {
  return run_trial_traced(cfg, trial_index, kernels).result;
}

namespace detail {

inline MetricSummary summarize(const std::vector<TrialResult>& trials, double TrialResult::*field) {
  MetricSummary s;
  s.count = static_cast<int>(trials.size());
  double sum = 0.0;
  for (const auto& t : trials) sum += t.*field;
  s.mean = sum / s.count;
  if (s.count > 1) {
    double ss = 0.0;
    for (const auto& t : trials) ss += (t.*field - s.mean) * (t.*field - s.mean);
    s.se = std::sqrt(ss / (s.count - 1)) / std::sqrt(static_cast<double>(s.count));
  }
  return s;
}

}  // namespace detail

/// Runs trials 0..trials-1 on a worker pool and aggregates in index order,
/// so the report does not depend on the thread count.
inline BenchReport run_benchmark(const BenchConfig& cfg, const BenchKernels& kernels) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<TrialResult> results(static_cast<std::size_t>(cfg.trials));
  unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cfg.trials));

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= cfg.trials || failed.load()) return;
      try {
        results[static_cast<std::size_t>(i)] = run_trial(cfg, static_cast<std::uint64_t>(i), kernels);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (error) std::rethrow_exception(error);

  BenchReport rep;
  rep.config = cfg;
  rep.e_kk_oracle = detail::summarize(results, &TrialResult::e_kk_oracle);
  rep.e_kh_oracle = detail::summarize(results, &TrialResult::e_kh_oracle);
  rep.e_kk_mean = detail::summarize(results, &TrialResult::e_kk_mean);
  rep.e_kh_mean = detail::summarize(results, &TrialResult::e_kh_mean);
  for (const auto& r : results) rep.total_resamples += r.resamples;
  rep.trials = std::move(results);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

inline BenchReport run_benchmark(const BenchConfig& cfg) { return run_benchmark(cfg, make_bench_kernels(cfg)); }

}  // namespace nearideal
