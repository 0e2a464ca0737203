#pragma once

// Numerical checks of the defining properties of the near-ideal family:
//   a1  bounded gain over the family
//   a2  H_a -> 1 uniformly on [-Omega, Omega] as a -> 1
//   a3  sequence-domain identity approximation for a band-limited input
//   b1  H_a(-1) = 0 with vanishing derivatives in omega at pi, k = 1..m
//   b2  |H_a| < eps on a neighbourhood of pi
//   c   |H_a - 1| <= eps on [-Omega, Omega] and |H_a| <= M_{mu,q} on
//       +-[Omega0, Omega1]
// Everything here is deterministic grid evaluation; no randomness.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nearideal/error.hpp"
#include "nearideal/realization.hpp"
#include "nearideal/xfer.hpp"

namespace nearideal {

/// Bands for the domination check. Omega0 == Omega1 is allowed and denotes
/// an empty domination band.
class BandSpec {
 public:
  BandSpec(double omega, double omega0, double omega1, double epsilon, int grid_points)
      : omega_(omega), omega0_(omega0), omega1_(omega1), epsilon_(epsilon), grid_(grid_points) {
    detail::require(omega > 0.0 && omega < omega0 && omega0 <= omega1 && omega1 < std::numbers::pi,
                    "band: need 0 < Omega < Omega0 <= Omega1 < pi");
    detail::require(epsilon > 0.0, "band: epsilon must be > 0");
    detail::require(grid_points >= 2, "band: grid_points must be >= 2");
  }

  /// Omega = 2.0, Omega0 = 2.6, Omega1 = 3.0, eps = 0.1 on 4096 points.
  static BandSpec default_band() { return {2.0, 2.6, 3.0, 0.1, 4096}; }

  double omega() const { return omega_; }
  double omega0() const { return omega0_; }
  double omega1() const { return omega1_; }
  double epsilon() const { return epsilon_; }
  int grid_points() const { return grid_; }

 private:
  double omega_;
  double omega0_;
  double omega1_;
  double epsilon_;
  int grid_;
};

using NamedValues = std::vector<std::pair<std::string, double>>;

struct ConditionReport {
  std::string condition_id;  // a1, a2, a3, b1, b2 or c
  bool pass = false;
  NamedValues witness;
  NamedValues tolerances;
  NamedValues parameters;

  /// Looks up a witness entry; NaN when absent.
  double witness_value(std::string_view name) const {
    for (const auto& [k, v] : witness)
      if (k == name) return v;
    return std::numeric_limits<double>::quiet_NaN();
  }
};

namespace detail {

inline std::vector<double> linspace(double lo, double hi, int points) {
  if (points <= 1 || lo == hi) return {lo};
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int j = 0; j < points; ++j) out[static_cast<std::size_t>(j)] = lo + (hi - lo) * j / (points - 1);
  return out;
}

// Shortest round-trip form, used in witness keys such as "s[a=0.99]".
inline std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline NamedValues near_ideal_parameters(const NearIdealParams& p) {
  return {{"a", p.a()}, {"p", p.p()}, {"N", p.N()}, {"m", p.m()}};
}

inline Complex near_ideal_at(const NearIdealParams& p, double omega,
                             NearIdealTerms terms = NearIdealTerms::kFull) {
  return eval_near_ideal(p, on_circle(omega), terms);
}

}  // namespace detail

// --- a1 ---------------------------------------------------------------------

/// Gain bound used by check_bounded_gain: 2 (e + 1)^m.
inline double bounded_gain_limit(int m) { return 2.0 * std::pow(std::numbers::e + 1.0, m); }

inline ConditionReport check_bounded_gain(double p, int N, int m, std::span<const double> a_list, int grid) {
  detail::require(grid >= 2, "check_bounded_gain: grid must be >= 2");
  ConditionReport r;
  r.condition_id = "a1";
  const double bound = bounded_gain_limit(m);
  double max_gain = 0.0;
  double arg_a = std::numeric_limits<double>::quiet_NaN();
  double arg_omega = std::numeric_limits<double>::quiet_NaN();
  const auto omegas = detail::linspace(0.0, std::numbers::pi, grid);
  for (double a : a_list) {
    const NearIdealParams prm(a, p, N, m);
    for (double w : omegas) {
      const double g = std::abs(detail::near_ideal_at(prm, w));
      if (g > max_gain) {
        max_gain = g;
        arg_a = a;
        arg_omega = w;
      }
    }
  }
  r.pass = max_gain <= bound;
  r.witness = {{"max_gain", max_gain}, {"argmax_a", arg_a}, {"argmax_omega", arg_omega}};
  r.tolerances = {{"gain_bound", bound}};
  r.parameters = {{"p", p}, {"N", N}, {"m", m}, {"grid", grid}, {"a_count", static_cast<double>(a_list.size())}};
  return r;
}

// --- a2 ---------------------------------------------------------------------

inline constexpr double kIdentityTolerance = 0.05;

/// s(a) = max over [-Omega, Omega] of |H_a - 1| for an increasing sequence of
/// a sharing (p, N, m). Passes iff s decreases from first to last and the last
/// value is below 0.05. Omega = 0 reduces to the single point w = 0.
inline ConditionReport check_identity_approx(std::span<const NearIdealParams> params_seq, double omega_max,
                                             int grid) {
  detail::require(params_seq.size() >= 2, "check_identity_approx: need at least two filters");
  detail::require(omega_max >= 0.0 && omega_max < std::numbers::pi, "check_identity_approx: Omega in [0, pi)");
  for (std::size_t i = 1; i < params_seq.size(); ++i) {
    const auto& prev = params_seq[i - 1];
    const auto& cur = params_seq[i];
    detail::require(cur.p() == prev.p() && cur.N() == prev.N() && cur.m() == prev.m(),
                    "check_identity_approx: filters must share p, N, m");
    detail::require(cur.a() > prev.a(), "check_identity_approx: a must increase strictly");
  }

  ConditionReport r;
  r.condition_id = "a2";
  const auto omegas = detail::linspace(-omega_max, omega_max, grid);
  std::vector<double> s;
  for (const auto& prm : params_seq) {
    double worst = 0.0;
    for (double w : omegas) worst = std::max(worst, std::abs(detail::near_ideal_at(prm, w) - 1.0));
    s.push_back(worst);
    r.witness.emplace_back("s[a=" + detail::fmt(prm.a()) + "]", worst);
  }
  r.pass = s.back() < s.front() && s.back() < kIdentityTolerance;
  r.tolerances = {{"final_error_max", kIdentityTolerance}};
  r.parameters = {{"Omega", omega_max}, {"grid", grid}, {"p", params_seq[0].p()},
                  {"N", params_seq[0].N()}, {"m", params_seq[0].m()}};
  return r;
}

// --- a3 ---------------------------------------------------------------------

/// Filters x(t) = sum_k cos(w_k t) / K (known for all t) with each realized
/// kernel and records max over t in [0, horizon) of |y_a(t) - x(t)|.
/// Passes iff the errors decrease strictly along the sequence.
inline ConditionReport check_sequence_identity(std::span<const NearIdealParams> params_seq,
                                               std::span<const double> tone_omegas, int horizon = 64,
                                               std::size_t grid = kDefaultGrid) {
  detail::require(params_seq.size() >= 2, "check_sequence_identity: need at least two filters");
  detail::require(!tone_omegas.empty(), "check_sequence_identity: need at least one tone");
  auto x = [&](double t) {
    double v = 0.0;
    for (double w : tone_omegas) v += std::cos(w * t);
    return v / static_cast<double>(tone_omegas.size());
  };

  ConditionReport r;
  r.condition_id = "a3";
  std::vector<double> errors;
  for (const auto& prm : params_seq) {
    const auto kernel = impulse_from_spec(TransferSpec(prm), grid, grid / 2);
    double worst = 0.0;
    for (int t = 0; t < horizon; ++t) {
      double y = 0.0;
      for (std::size_t j = 0; j < kernel.support(); ++j) y += kernel[j] * x(t - static_cast<double>(j));
      worst = std::max(worst, std::abs(y - x(t)));
    }
    errors.push_back(worst);
    r.witness.emplace_back("sup_err[a=" + detail::fmt(prm.a()) + "]", worst);
  }
  r.pass = true;
  for (std::size_t i = 1; i < errors.size(); ++i) r.pass = r.pass && errors[i] < errors[i - 1];
  r.parameters = {{"horizon", horizon}, {"grid", static_cast<double>(grid)}};
  for (std::size_t k = 0; k < tone_omegas.size(); ++k)
    r.parameters.emplace_back("tone[" + std::to_string(k) + "]", tone_omegas[k]);
  return r;
}

// --- b1 ---------------------------------------------------------------------

struct DerivativeOptions {
  double step = 1e-3;
  double relative_tolerance = 1e-5;
  double zero_tolerance = 1e-12;
  NearIdealTerms terms = NearIdealTerms::kFull;
};

namespace detail {

/// k-th central difference of f at x with spacing h; offsets (k/2 - j) h.
template <class F>
Complex central_difference(F&& f, double x, int k, double h) {
  Complex acc{0.0, 0.0};
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binom * f(x + (0.5 * k - j) * h);
    binom = binom * (k - j) / (j + 1);
  }
  return acc / std::pow(h, k);
}

/// One Richardson step on the O(h^2) central difference.
template <class F>
Complex richardson_derivative(F&& f, double x, int k, double h) {
  return (4.0 * central_difference(f, x, k, 0.5 * h) - central_difference(f, x, k, h)) / 3.0;
}

}  // namespace detail

/// Estimated d^k/dw^k H_a(e^{iw}) at w, Richardson-extrapolated.
inline Complex near_ideal_derivative(const NearIdealParams& prm, double omega, int k, double step,
                                     NearIdealTerms terms = NearIdealTerms::kFull) {
  auto f = [&](double w) { return detail::near_ideal_at(prm, w, terms); };
  return detail::richardson_derivative(f, omega, k, step);
}

/// |H(-1)| must be below zero_tolerance times the peak gain, and for k = 1..m
/// the derivative at pi must be below relative_tolerance times the same
/// estimate taken at pi/2. Each estimate is repeated with the step halved; a
/// genuine zero shrinks under refinement, so the refined estimate may not
/// grow by more than 10% (or must sit an order of magnitude under the
/// tolerance). Orders m+1..2m-1 are reported but not asserted.
inline ConditionReport check_zero_at_pi(const NearIdealParams& prm, const DerivativeOptions& opt = {}) {
  ConditionReport r;
  r.condition_id = "b1";
  const double pi = std::numbers::pi;

  double max_gain = 0.0;
  for (double w : detail::linspace(0.0, pi, 4096))
    max_gain = std::max(max_gain, std::abs(detail::near_ideal_at(prm, w, opt.terms)));
  const double value = std::abs(eval_near_ideal(prm, Complex{-1.0, 0.0}, opt.terms));
  bool pass = value <= opt.zero_tolerance * max_gain;
  r.witness = {{"abs_H_at_pi", value}, {"max_gain", max_gain}};
  r.tolerances = {{"zero_relative", opt.zero_tolerance}, {"derivative_relative", opt.relative_tolerance},
                  {"step", opt.step}};

  for (int k = 1; k <= 2 * prm.m() - 1; ++k) {
    const double d = std::abs(near_ideal_derivative(prm, pi, k, opt.step, opt.terms));
    const double d_refined = std::abs(near_ideal_derivative(prm, pi, k, 0.5 * opt.step, opt.terms));
    const double scale = std::abs(near_ideal_derivative(prm, 0.5 * pi, k, opt.step, opt.terms));
    const double tol = opt.relative_tolerance * scale;
    const bool converged = d_refined <= std::max(1.1 * d, 0.1 * tol);
    const std::string tag = "[k=" + std::to_string(k) + "]";
    r.witness.emplace_back("deriv" + tag, d);
    r.witness.emplace_back("deriv_refined" + tag, d_refined);
    r.witness.emplace_back("scale" + tag, scale);
    r.witness.emplace_back("tol" + tag, tol);
    r.witness.emplace_back("converged" + tag, converged ? 1.0 : 0.0);
    if (k <= prm.m()) pass = pass && d <= tol && converged;
  }
  r.pass = pass;
  r.parameters = detail::near_ideal_parameters(prm);
  if (opt.terms == NearIdealTerms::kExpOnly) r.parameters.emplace_back("correction_disabled", 1.0);
  return r;
}

// --- b2 ---------------------------------------------------------------------

/// Largest delta with sup over [pi - delta, pi + delta] of |H_a| < eps: a scan
/// over `grid` offsets in [0, pi] followed by bisection between the last
/// accepted and first rejected offset. delta = pi means the whole circle.
inline ConditionReport check_small_neighborhood(const NearIdealParams& prm, double epsilon, int grid) {
  detail::require(epsilon > 0.0, "check_small_neighborhood: epsilon must be > 0");
  detail::require(grid >= 2, "check_small_neighborhood: grid must be >= 2");
  const double pi = std::numbers::pi;
  auto peak_at = [&](double delta) {
    return std::max(std::abs(detail::near_ideal_at(prm, pi - delta)),
                    std::abs(detail::near_ideal_at(prm, pi + delta)));
  };

  const auto offsets = detail::linspace(0.0, pi, grid);
  double sup_inside = 0.0;
  double delta = -1.0;  // no admissible offset yet
  double rejected = pi;
  for (double off : offsets) {
    const double g = peak_at(off);
    if (g >= epsilon) {
      rejected = off;
      break;
    }
    sup_inside = std::max(sup_inside, g);
    delta = off;
  }

  if (delta >= 0.0 && rejected > delta && delta < pi) {
    double lo = delta;
    double hi = rejected;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (peak_at(mid) < epsilon)
        lo = mid;
      else
        hi = mid;
    }
    delta = lo;
  }

  ConditionReport r;
  r.condition_id = "b2";
  r.pass = delta > 0.0;
  r.witness = {{"delta", std::max(delta, 0.0)}, {"sup_inside_grid", sup_inside}};
  r.tolerances = {{"epsilon", epsilon}};
  r.parameters = detail::near_ideal_parameters(prm);
  r.parameters.emplace_back("grid", grid);
  return r;
}

// --- c ----------------------------------------------------------------------

inline ConditionReport check_domination(const NearIdealParams& near, const ReferenceParams& ref,
                                        const BandSpec& band) {
  ConditionReport r;
  r.condition_id = "c";
  double identity_err = 0.0;
  for (double w : detail::linspace(-band.omega(), band.omega(), band.grid_points()))
    identity_err = std::max(identity_err, std::abs(detail::near_ideal_at(near, w) - 1.0));
  const double identity_margin = band.epsilon() - identity_err;

  double dom_margin = std::numeric_limits<double>::infinity();
  double worst_omega = std::numeric_limits<double>::quiet_NaN();
  double worst_gain = std::numeric_limits<double>::quiet_NaN();
  double worst_reference = std::numeric_limits<double>::quiet_NaN();
  int points = 0;
  if (band.omega1() > band.omega0()) {
    for (double w : detail::linspace(band.omega0(), band.omega1(), band.grid_points())) {
      for (double signed_w : {w, -w}) {
        const double g = std::abs(detail::near_ideal_at(near, signed_w));
        const double mref = eval_reference(ref, signed_w);
        ++points;
        if (mref - g < dom_margin) {
          dom_margin = mref - g;
          worst_omega = signed_w;
          worst_gain = g;
          worst_reference = mref;
        }
      }
    }
  }

  r.pass = identity_margin >= 0.0 && dom_margin >= 0.0;
  r.witness = {{"identity_max_error", identity_err},
               {"identity_margin", identity_margin},
               {"domination_margin", dom_margin},
               {"domination_worst_omega", worst_omega},
               {"domination_worst_gain", worst_gain},
               {"domination_worst_reference", worst_reference},
               {"domination_points", points}};
  r.tolerances = {{"epsilon", band.epsilon()}};
  r.parameters = detail::near_ideal_parameters(near);
  r.parameters.insert(r.parameters.end(), {{"mu", ref.mu()},
                                           {"q", ref.q()},
                                           {"Omega", band.omega()},
                                           {"Omega0", band.omega0()},
                                           {"Omega1", band.omega1()},
                                           {"grid", band.grid_points()}});
  return r;
}

}  // namespace nearideal
