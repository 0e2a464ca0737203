#pragma once

// Thin RAII wrapper over FFTW for one-shot complex transforms.

#include <fftw3.h>

#include <complex>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace nearideal::dft {

namespace detail {

// Planner calls are not thread-safe in FFTW; execution is.
inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

inline std::vector<std::complex<double>> transform(std::span<const std::complex<double>> in,
                                                   int sign) {
  const int n = static_cast<int>(in.size());
  std::vector<std::complex<double>> src(in.begin(), in.end());
  std::vector<std::complex<double>> out(in.size());
  auto* src_ptr = reinterpret_cast<fftw_complex*>(src.data());
  auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_1d(n, src_ptr, out_ptr, sign, FFTW_ESTIMATE));
  }
  fftw_execute(plan.get());
  return out;
}

}  // namespace detail

/// X[k] = sum_t x[t] e^{-2 pi i k t / n}.
inline std::vector<std::complex<double>> forward(std::span<const std::complex<double>> x) {
  return detail::transform(x, FFTW_FORWARD);
}

/// x[t] = (1/n) sum_k X[k] e^{2 pi i k t / n}.
inline std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> spectrum) {
  auto out = detail::transform(spectrum, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(spectrum.size());
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace nearideal::dft
