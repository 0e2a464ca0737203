#pragma once

// AR(1)/AR(2) sample paths for the Monte-Carlo forecasting experiments.
//
// Randomness is counter-based: every number is a pure function of
// (master seed, trial index, stream, counter), so trials are independent of
// scheduling and reproducible across runs. Innovations are keyed by absolute
// time index, which means two simulations of the same trial that differ only
// in burn-in or window length see the same eta(t) wherever they overlap.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "nearideal/error.hpp"
#include "nearideal/stream.hpp"

namespace nearideal {

/// |beta2| < 1, beta1 + beta2 < 1, beta2 - beta1 < 1: both roots of
/// z^2 - beta1 z - beta2 lie strictly inside the unit disk.
inline bool is_stationary(double beta1, double beta2) {
  return std::abs(beta2) < 1.0 && beta1 + beta2 < 1.0 && beta2 - beta1 < 1.0;
}

/// x(t) = beta1 x(t-1) + beta2 x(t-2) + sigma eta(t).
class ArModel {
 public:
  ArModel(double beta1, double beta2, double sigma) : beta1_(beta1), beta2_(beta2), sigma_(sigma) {
    detail::require(sigma > 0.0, "AR model: sigma must be > 0");
    detail::require(is_stationary(beta1, beta2), "AR model: coefficients are not stationary");
  }

  double beta1() const { return beta1_; }
  double beta2() const { return beta2_; }
  double sigma() const { return sigma_; }

 private:
  double beta1_;
  double beta2_;
  double sigma_;
};

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr double to_open_unit(std::uint64_t bits) {
  // (k + 1/2) 2^-52 for k in [0, 2^52): exactly representable, never 0 or 1.
  // (With 53 bits the top value 1 - 2^-54 would round up to 1.)
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

}  // namespace detail

/// Per-trial random streams. Stream 0 is a sequential uniform stream used
/// for coefficient draws; stream 1 holds Gaussian innovations indexed by time.
class TrialRng {
 public:
  TrialRng(std::uint64_t master_seed, std::uint64_t trial_index)
      : seed_(master_seed),
        trial_(trial_index),
        key_(detail::mix64(detail::mix64(master_seed + detail::kGolden) ^ (trial_index * 0xd1b54a32d192ed03ULL))) {}

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t trial_index() const { return trial_; }
  std::uint64_t draws() const { return counter_; }

  /// Next uniform variate in (0,1) from the coefficient stream.
  double uniform() { return detail::to_open_unit(bits(kCoefficientStream, counter_++)); }

  /// Standard normal innovation eta(t) via the Box-Muller cosine branch on
  /// the pair of uniforms at counters (2t, 2t+1) of the innovation stream.
  double innovation(std::int64_t t) const {
    const auto c = static_cast<std::uint64_t>(t) * 2;
    const double u1 = detail::to_open_unit(bits(kInnovationStream, c));
    const double u2 = detail::to_open_unit(bits(kInnovationStream, c + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static constexpr std::uint64_t kCoefficientStream = 0;
  static constexpr std::uint64_t kInnovationStream = 1;

  std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const {
    const std::uint64_t stream_key = detail::mix64(key_ ^ ((stream + 1) * detail::kGolden));
    return detail::mix64(stream_key + counter * detail::kGolden);
  }

  std::uint64_t seed_;
  std::uint64_t trial_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct Ar2Coefficients {
  double beta1 = 0.0;
  double beta2 = 0.0;
};

/// beta2 = xi sqrt(1 - beta1^2) for beta1 in (0,1), xi in (-1,1).
inline Ar2Coefficients ar2_coeffs_from(double beta1, double xi) {
  return {beta1, xi * std::sqrt(1.0 - beta1 * beta1)};
}

/// beta1 ~ U(0,1), xi ~ U(-1,1); consumes exactly two uniforms, in that order.
inline Ar2Coefficients sample_ar2_coeffs(TrialRng& rng) {
  const double beta1 = rng.uniform();
  const double xi = 2.0 * rng.uniform() - 1.0;
  return ar2_coeffs_from(beta1, xi);
}

struct StationaryDraw {
  Ar2Coefficients coeffs;
  int resamples = 0;
};

/// sample_ar2_coeffs() repeated until is_stationary() holds.
///
/// The draw satisfies beta1^2 + beta2^2 < 1, which does not by itself keep the
/// roots inside the unit disk (e.g. beta1 = 0.6, beta2 = 0.7), so rejections
/// do occur.
inline StationaryDraw sample_stationary_ar2(TrialRng& rng, int max_resamples = 10000) {
  StationaryDraw out;
  for (;;) {
    out.coeffs = sample_ar2_coeffs(rng);
    if (is_stationary(out.coeffs.beta1, out.coeffs.beta2)) return out;
    if (++out.resamples > max_resamples) throw DomainError("no stationary AR(2) draw found");
  }
}

/// Simulates the AR recursion from zero state at time start - burn_in and
/// returns x(start), ..., x(start + length - 1). `noise(t)` supplies eta(t).
template <class Noise>
Series simulate_ar_with(const ArModel& model, std::int64_t start, std::size_t length, std::size_t burn_in,
                   Noise&& noise) {
  std::vector<double> out;
  out.reserve(length);
  double x1 = 0.0;  // x(t-1)
  double x2 = 0.0;  // x(t-2)
  const std::int64_t first = start - static_cast<std::int64_t>(burn_in);
  const std::int64_t last = start + static_cast<std::int64_t>(length);
  for (std::int64_t t = first; t < last; ++t) {
    const double x = model.beta1() * x1 + model.beta2() * x2 + model.sigma() * noise(t);
    x2 = x1;
    x1 = x;
    if (t >= start) out.push_back(x);
  }
  return Series(start, std::move(out));
}

inline Series simulate_ar(const ArModel& model, std::int64_t start, std::size_t length, std::size_t burn_in,
                          const TrialRng& rng) {
  return simulate_ar_with(model, start, length, burn_in, [&rng](std::int64_t t) { return rng.innovation(t); });
}

/// Test hook: eta(t) read sequentially from `eta` (first value at start - burn_in).
inline Series simulate_ar(const ArModel& model, std::int64_t start, std::size_t length, std::size_t burn_in,
                          std::span<const double> eta) {
  detail::require(eta.size() >= length + burn_in, "innovation sequence too short");
  const std::int64_t first = start - static_cast<std::int64_t>(burn_in);
  return simulate_ar_with(model, start, length, burn_in,
                          [&](std::int64_t t) { return eta[static_cast<std::size_t>(t - first)]; });
}

}  // namespace nearideal
