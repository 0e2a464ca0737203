#pragma once

// Causal FIR filtering of finite real sequences, batch and streaming.
// Both paths sum lags in ascending order so their outputs agree bit for bit.

#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nearideal/csv.hpp"
#include "nearideal/error.hpp"
#include "nearideal/realization.hpp"

namespace nearideal {

/// Finite real sequence x(start), x(start+1), ...
class Series {
 public:
  Series() = default;
  Series(std::int64_t start_index, std::vector<double> values)
      : start_(start_index), values_(std::move(values)) {
    for (double v : values_) detail::require(std::isfinite(v), "series values must be finite");
  }

  std::int64_t start_index() const { return start_; }
  std::int64_t end_index() const { return start_ + static_cast<std::int64_t>(values_.size()); }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }

  bool contains(std::int64_t t) const { return t >= start_ && t < end_index(); }

  /// Value at time t; zero outside the stored range.
  double at(std::int64_t t) const { return contains(t) ? values_[static_cast<std::size_t>(t - start_)] : 0.0; }

 private:
  std::int64_t start_ = 0;
  std::vector<double> values_;
};

/// y(t) = sum_{j=0}^{support-1} h(j) x(t-j) with zero pre-history.
inline Series convolve(const Kernel& kernel, const Series& x) {
  const auto taps = kernel.taps();
  const auto xs = x.values();
  std::vector<double> y(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::size_t lags = std::min(i + 1, taps.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < lags; ++j) acc += taps[j] * xs[i - j];
    y[i] = acc;
  }
  return Series(x.start_index(), std::move(y));
}

/// Online form of convolve(): one output per pushed sample.
class StreamState {
 public:
  explicit StreamState(Kernel kernel)
      : kernel_(std::move(kernel)), ring_(kernel_.support(), 0.0) {}

  double push(double sample) {
    detail::require(std::isfinite(sample), "stream samples must be finite");
    head_ = (head_ + 1) % ring_.size();
    ring_[head_] = sample;
    if (filled_ < ring_.size()) ++filled_;

    const auto taps = kernel_.taps();
    double acc = 0.0;
    std::size_t pos = head_;
    for (std::size_t j = 0; j < filled_; ++j) {
      acc += taps[j] * ring_[pos];
      pos = (pos == 0) ? ring_.size() - 1 : pos - 1;
    }
    return acc;
  }

  /// Most recent min(pushes, support) samples, newest first.
  std::vector<double> history() const {
    std::vector<double> out;
    std::size_t pos = head_;
    for (std::size_t j = 0; j < filled_; ++j) {
      out.push_back(ring_[pos]);
      pos = (pos == 0) ? ring_.size() - 1 : pos - 1;
    }
    return out;
  }

  const Kernel& kernel() const { return kernel_; }

 private:
  Kernel kernel_;
  std::vector<double> ring_;
  std::size_t head_ = 0;
  std::size_t filled_ = 0;
};

// --- CSV: header "t,x" ------------------------------------------------------

inline void write_series_csv(std::ostream& os, const Series& x) {
  os << "t,x\n";
  for (std::int64_t t = x.start_index(); t < x.end_index(); ++t)
    csv::write_row(os, {std::to_string(t), csv::format_double(x.at(t))});
}

inline Series read_series_csv(std::istream& is) {
  auto col = csv::read_indexed_column(is, "t", "x");
  for (double v : col.values)
    if (!std::isfinite(v)) throw ParseError("series CSV contains a non-finite value");
  return Series(col.start, std::move(col.values));
}

}  // namespace nearideal
