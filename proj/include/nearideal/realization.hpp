#pragma once

// Realizes a transfer function as a causal, finitely supported impulse
// response: sample on the L-th roots of unity, inverse DFT, keep the first
// `support` taps. The upper half of the circular buffer holds negative
// times and serves as the causality certificate; a second realization on
// 2L bounds the aliasing error.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nearideal/csv.hpp"
#include "nearideal/dft.hpp"
#include "nearideal/error.hpp"
#include "nearideal/xfer.hpp"

namespace nearideal {

inline constexpr std::size_t kDefaultGrid = 65536;
inline constexpr double kCausalityTolerance = 1e-8;
inline constexpr double kRealnessTolerance = 1e-9;
inline constexpr double kAliasingTolerance = 1e-9;

/// The realized impulse response has a non-negligible imaginary part.
class RealnessViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FrequencyResponse {
  TransferSpec spec;
  std::size_t grid = 0;
  std::vector<Complex> samples;  // samples[j] = H(e^{2 pi i j / grid})
};

struct KernelResiduals {
  double max_anticausal = 0.0;
  double max_imag = 0.0;
};

/// Causal FIR kernel: taps[t] for t = 0..support-1.
class Kernel {
 public:
  Kernel(std::vector<double> taps, std::optional<TransferSpec> origin, std::size_t grid,
         KernelResiduals residuals)
      : taps_(std::move(taps)), origin_(std::move(origin)), grid_(grid), residuals_(residuals) {
    detail::require(!taps_.empty(), "kernel must have at least one tap");
  }

  /// Kernel with no transfer-function provenance (e.g. read from CSV).
  explicit Kernel(std::vector<double> taps) : Kernel(std::move(taps), std::nullopt, 0, {}) {}

  std::span<const double> taps() const { return taps_; }
  std::size_t support() const { return taps_.size(); }
  double operator[](std::size_t t) const { return taps_[t]; }
  const std::optional<TransferSpec>& origin_spec() const { return origin_; }
  std::size_t grid() const { return grid_; }
  const KernelResiduals& residuals() const { return residuals_; }

  double max_abs_tap() const {
    double m = 0.0;
    for (double v : taps_) m = std::max(m, std::abs(v));
    return m;
  }

  double sum() const {
    double s = 0.0;
    for (double v : taps_) s += v;
    return s;
  }

 private:
  std::vector<double> taps_;
  std::optional<TransferSpec> origin_;
  std::size_t grid_;
  KernelResiduals residuals_;
};

namespace detail {

inline void require_grid(std::size_t grid) {
  require(grid >= 16 && std::has_single_bit(grid), "grid size must be a power of two >= 16");
}

inline Complex grid_point(std::size_t j, std::size_t grid) {
  if (j == 0) return {1.0, 0.0};
  if (2 * j == grid) return {-1.0, 0.0};
  constexpr double two_pi = 2.0 * std::numbers::pi;
  // The lower half is mirrored through negative angles so that the two halves
  // are exact conjugates of each other.
  if (2 * j > grid) return on_circle(-(two_pi * static_cast<double>(grid - j)) / static_cast<double>(grid));
  return on_circle((two_pi * static_cast<double>(j)) / static_cast<double>(grid));
}

struct RawRealization {
  std::vector<Complex> values;  // full circular inverse transform
};

}  // namespace detail

/// Samples spec on the grid-th roots of unity.
inline FrequencyResponse sample_response(const TransferSpec& spec, std::size_t grid) {
  detail::require_grid(grid);
  FrequencyResponse out{spec, grid, std::vector<Complex>(grid)};
  for (std::size_t j = 0; j < grid; ++j) out.samples[j] = eval_spec(spec, detail::grid_point(j, grid));
  return out;
}

namespace detail {

inline RawRealization realize_raw(const TransferSpec& spec, std::size_t grid) {
  const auto response = sample_response(spec, grid);
  return {dft::inverse(response.samples)};
}

inline std::vector<double> causal_slice(const RawRealization& raw, std::size_t support) {
  std::vector<double> taps(support);
  for (std::size_t t = 0; t < support; ++t) taps[t] = raw.values[t].real();
  return taps;
}

inline void require_support(std::size_t grid, std::size_t support) {
  require(support >= 1 && support <= grid / 2, "support must lie in [1, grid/2]");
}

}  // namespace detail

/// Maximum absolute difference of the first `support` taps realized on grid
/// and on 2*grid. Pure diagnostic; never throws on a large difference.
inline double aliasing_check(const TransferSpec& spec, std::size_t grid, std::size_t support) {
  detail::require_grid(grid);
  detail::require_support(grid, support);
  const auto coarse = detail::realize_raw(spec, grid);
  const auto fine = detail::realize_raw(spec, 2 * grid);
  double diff = 0.0;
  for (std::size_t t = 0; t < support; ++t)
    diff = std::max(diff, std::abs(coarse.values[t].real() - fine.values[t].real()));
  return diff;
}

/// Realizes spec as a causal kernel with `support` taps.
///
/// Throws CausalityViolation when the negative-time half of the inverse
/// transform exceeds 1e-8 max|taps|, RealnessViolation when the imaginary
/// residue exceeds 1e-9 max|taps|, and AliasingError when the taps move by
/// more than 1e-9 max|taps| on doubling the grid.
inline Kernel impulse_from_spec(const TransferSpec& spec, std::size_t grid = kDefaultGrid,
                                std::size_t support = 256) {
  detail::require_grid(grid);
  detail::require_support(grid, support);

  const auto raw = detail::realize_raw(spec, grid);
  auto taps = detail::causal_slice(raw, support);

  KernelResiduals res;
  for (std::size_t t = grid / 2; t < grid; ++t)
    res.max_anticausal = std::max(res.max_anticausal, std::abs(raw.values[t].real()));
  for (const auto& v : raw.values) res.max_imag = std::max(res.max_imag, std::abs(v.imag()));

  double scale = 0.0;
  for (double v : taps) scale = std::max(scale, std::abs(v));

  if (res.max_anticausal > kCausalityTolerance * scale)
    throw CausalityViolation("spec " + spec.describe() + " is not causal: anticausal residue " +
                             csv::format_double(res.max_anticausal) + " vs max tap " + csv::format_double(scale));
  if (res.max_imag > kRealnessTolerance * scale)
    throw RealnessViolation("spec " + spec.describe() + " has a complex impulse response");

  const auto fine = detail::realize_raw(spec, 2 * grid);
  double alias = 0.0;
  for (std::size_t t = 0; t < support; ++t) alias = std::max(alias, std::abs(taps[t] - fine.values[t].real()));
  if (alias > kAliasingTolerance * scale)
    throw AliasingError("spec " + spec.describe() + ": grid " + std::to_string(grid) +
                        " too coarse, doubling moved taps by " + csv::format_double(alias));

  return Kernel(std::move(taps), spec, grid, res);
}

/// Keeps lags 0..d (support d+1); requires d < support.
inline Kernel truncate(const Kernel& kernel, std::size_t d) {
  detail::require(d < kernel.support(), "truncate: lag d must be below the kernel support");
  const auto taps = kernel.taps();
  return Kernel(std::vector<double>(taps.begin(), taps.begin() + static_cast<std::ptrdiff_t>(d) + 1),
                kernel.origin_spec(), kernel.grid(), kernel.residuals());
}

/// Full linear convolution of two kernels (support s1 + s2 - 1).
inline Kernel compose(const Kernel& first, const Kernel& second) {
  std::vector<double> taps(first.support() + second.support() - 1, 0.0);
  for (std::size_t i = 0; i < first.support(); ++i)
    for (std::size_t j = 0; j < second.support(); ++j) taps[i + j] += first[i] * second[j];
  std::optional<TransferSpec> origin;
  if (first.origin_spec() && second.origin_spec())
    origin = TransferSpec::product({*first.origin_spec(), *second.origin_spec()});
  KernelResiduals res{std::max(first.residuals().max_anticausal, second.residuals().max_anticausal),
                      std::max(first.residuals().max_imag, second.residuals().max_imag)};
  return Kernel(std::move(taps), std::move(origin), std::max(first.grid(), second.grid()), res);
}

// --- CSV: header "t,h" ------------------------------------------------------

inline void write_kernel_csv(std::ostream& os, const Kernel& kernel) {
  os << "t,h\n";
  for (std::size_t t = 0; t < kernel.support(); ++t)
    csv::write_row(os, {std::to_string(t), csv::format_double(kernel[t])});
}

inline Kernel read_kernel_csv(std::istream& is) {
  auto col = csv::read_indexed_column(is, "t", "h");
  if (col.values.empty()) throw ParseError("kernel CSV has no rows");
  if (col.start != 0) throw ParseError("kernel CSV must start at t=0");
  return Kernel(std::move(col.values));
}

}  // namespace nearideal
