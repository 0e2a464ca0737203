#pragma once

// Closed-form transfer functions of the near-ideal smoothing family, the
// non-causal reference family, and the one-step predictor, evaluated
// pointwise on |z| >= 1.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nearideal/error.hpp"

namespace nearideal {

using Complex = std::complex<double>;

namespace detail {

inline constexpr double kSingularityGuard = 1e-14;

/// z^n for integer n by binary powering; no complex logarithm involved.
inline Complex ipow(Complex z, long long n) {
  if (n < 0) {
    z = 1.0 / z;
    n = -n;
  }
  Complex result{1.0, 0.0};
  while (n > 0) {
    if (n & 1) result *= z;
    z *= z;
    n >>= 1;
  }
  return result;
}

inline double parity_sign(long long n) { return (n % 2 == 0) ? 1.0 : -1.0; }

}  // namespace detail

/// Point on the unit circle at angle omega.
inline Complex on_circle(double omega) { return std::polar(1.0, omega); }

/// Parameters (a, p, N, m) of the near-ideal causal smoothing filter H_a.
class NearIdealParams {
 public:
  NearIdealParams(double a, double p, int N, int m) : a_(a), p_(p), N_(N), m_(m) {
    detail::require(a > 0.0 && a < 1.0, "near-ideal: a must lie in (0,1)");
    detail::require(p > 0.5 && p < 1.0, "near-ideal: p must lie in (1/2,1)");
    detail::require(N >= 1, "near-ideal: N must be >= 1");
    detail::require(m >= 1, "near-ideal: m must be >= 1");
  }

  double a() const { return a_; }
  double p() const { return p_; }
  int N() const { return N_; }
  int m() const { return m_; }

  NearIdealParams with_a(double a) const { return {a, p_, N_, m_}; }

  friend bool operator==(const NearIdealParams&, const NearIdealParams&) = default;

 private:
  double a_;
  double p_;
  int N_;
  int m_;
};

/// Parameters of the reference non-causal gain exp(-mu / |1 + e^{iw}|^q).
class ReferenceParams {
 public:
  ReferenceParams(double mu, double q) : mu_(mu), q_(q) {
    detail::require(mu > 0.0, "reference: mu must be > 0");
    detail::require(q > 1.0, "reference: q must be > 1");
  }

  double mu() const { return mu_; }
  double q() const { return q_; }

  friend bool operator==(const ReferenceParams&, const ReferenceParams&) = default;

 private:
  double mu_;
  double q_;
};

/// Predictor gain and exponent. Accuracy for inputs dominated by
/// M_{tau,q} requires q > 1 + 2/r.
class PredictorParams {
 public:
  PredictorParams(double gamma, double r) : gamma_(gamma), r_(r) {
    detail::require(gamma > 0.0, "predictor: gamma must be > 0");
    detail::require(r > 0.0, "predictor: r must be > 0");
  }

  double gamma() const { return gamma_; }
  double r() const { return r_; }

  friend bool operator==(const PredictorParams&, const PredictorParams&) = default;

 private:
  double gamma_;
  double r_;
};

class TransferSpec;

struct Product {
  std::vector<TransferSpec> factors;
};

/// Symbolic transfer function: one of the three families, or a product.
class TransferSpec {
 public:
  using Variant = std::variant<NearIdealParams, ReferenceParams, PredictorParams, Product>;

  TransferSpec(NearIdealParams p) : v_(p) {}
  TransferSpec(ReferenceParams p) : v_(p) {}
  TransferSpec(PredictorParams p) : v_(p) {}

  static TransferSpec product(std::vector<TransferSpec> factors) {
    detail::require(!factors.empty(), "product spec needs at least one factor");
    return TransferSpec(Product{std::move(factors)});
  }

  const Variant& variant() const { return v_; }

  bool contains_near_ideal() const {
    if (std::holds_alternative<NearIdealParams>(v_)) return true;
    if (const auto* prod = std::get_if<Product>(&v_)) {
      for (const auto& f : prod->factors)
        if (f.contains_near_ideal()) return true;
    }
    return false;
  }

  /// Short human-readable label, e.g. "predictor(gamma=1.1,r=1.1)*near_ideal(...)".
  std::string describe() const;

 private:
  explicit TransferSpec(Product p) : v_(std::move(p)) {}
  Variant v_;
};

// --- coefficients -----------------------------------------------------------

/// xi(a,p) = exp(-(1-a)^(p-1)).
inline double xi_coef(double a, double p) {
  detail::require(a > 0.0 && a < 1.0, "xi_coef: a must lie in (0,1)");
  detail::require(p > 0.5 && p < 1.0, "xi_coef: p must lie in (1/2,1)");
  return std::exp(-std::pow(1.0 - a, p - 1.0));
}

/// gamma(a,p) = |1-a|^(p-2) * xi(a,p). Unrelated to the predictor gain.
inline double gamma_coef(double a, double p) {
  const double xi = xi_coef(a, p);
  return std::pow(std::abs(1.0 - a), p - 2.0) * xi;
}

// --- near-ideal family ------------------------------------------------------

/// Psi_a(z) = (1-a)^p / (z + a).
inline Complex eval_psi(const NearIdealParams& prm, Complex z) {
  const Complex denom = z + prm.a();
  if (std::abs(denom) < detail::kSingularityGuard) throw SingularityError("eval_psi: z = -a");
  return std::pow(1.0 - prm.a(), prm.p()) / denom;
}

/// G_a(z) = -xi + (gamma/N)((-1)^N z^{-N} - 1).
inline Complex eval_g(const NearIdealParams& prm, Complex z) {
  if (std::abs(z) < detail::kSingularityGuard) throw SingularityError("eval_g: z = 0");
  const double xi = xi_coef(prm.a(), prm.p());
  const double gc = gamma_coef(prm.a(), prm.p());
  const Complex periodic = detail::parity_sign(prm.N()) * detail::ipow(z, -prm.N()) - 1.0;
  return -xi + (gc / prm.N()) * periodic;
}

/// Which terms of the base exp(Psi) + G enter H_a. kExpOnly drops the
/// correction G and exists for diagnostics only.
enum class NearIdealTerms { kFull, kExpOnly };

/// H_a(z) = (exp(Psi_a(z)) + G_a(z))^m.
inline Complex eval_near_ideal(const NearIdealParams& prm, Complex z,
                               NearIdealTerms terms = NearIdealTerms::kFull) {
  Complex base = std::exp(eval_psi(prm, z));
  if (terms == NearIdealTerms::kFull) base += eval_g(prm, z);
  return detail::ipow(base, prm.m());
}

// --- reference family -------------------------------------------------------

/// M_{mu,q}(e^{iw}) = exp(-mu / |1 + e^{iw}|^q); the limit 0 at w = +-pi.
inline double eval_reference(const ReferenceParams& prm, double omega) {
  // |1 + e^{iw}| = 2|cos(w/2)|
  const double r = 2.0 * std::abs(std::cos(0.5 * omega));
  if (r == 0.0) return 0.0;
  return std::exp(-prm.mu() / std::pow(r, prm.q()));
}

// --- predictor --------------------------------------------------------------

/// K(z) = z (1 - exp[-gamma / (z + 1 - gamma^{-r})]).
inline Complex eval_predictor(const PredictorParams& prm, Complex z) {
  const double shift = 1.0 - std::exp(-prm.r() * std::log(prm.gamma()));
  const Complex denom = z + shift;
  if (std::abs(denom) < detail::kSingularityGuard)
    throw SingularityError("eval_predictor: z = -(1 - gamma^-r)");
  return z * (1.0 - std::exp(-prm.gamma() / denom));
}

// --- dispatch ---------------------------------------------------------------

namespace detail {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace detail

/// Evaluates any spec at z. The reference family is only defined on the
/// unit circle and is evaluated at arg(z).
inline Complex eval_spec(const TransferSpec& spec, Complex z) {
  return std::visit(
      detail::Overloaded{
          [&](const NearIdealParams& p) { return eval_near_ideal(p, z); },
          [&](const ReferenceParams& p) {
            detail::require(std::abs(std::abs(z) - 1.0) < 1e-12,
                            "reference family is defined on the unit circle only");
            return Complex{eval_reference(p, std::arg(z)), 0.0};
          },
          [&](const PredictorParams& p) { return eval_predictor(p, z); },
          [&](const Product& prod) {
            Complex acc{1.0, 0.0};
            for (const auto& f : prod.factors) acc *= eval_spec(f, z);
            return acc;
          }},
      spec.variant());
}

inline std::string TransferSpec::describe() const {
  auto num = [](double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  };
  return std::visit(
      detail::Overloaded{
          [&](const NearIdealParams& p) {
            return "near_ideal(a=" + num(p.a()) + ",p=" + num(p.p()) +
                   ",N=" + std::to_string(p.N()) + ",m=" + std::to_string(p.m()) + ")";
          },
          [&](const ReferenceParams& p) {
            return "reference(mu=" + num(p.mu()) + ",q=" + num(p.q()) + ")";
          },
          [&](const PredictorParams& p) {
            return "predictor(gamma=" + num(p.gamma()) + ",r=" + num(p.r()) + ")";
          },
          [&](const Product& prod) {
            std::string out;
            for (const auto& f : prod.factors) {
              if (!out.empty()) out += "*";
              out += f.describe();
            }
            return out;
          }},
      v_);
}

}  // namespace nearideal
