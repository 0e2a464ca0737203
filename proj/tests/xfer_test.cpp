#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nearideal/xfer.hpp"
#include "oracle_values.hpp"

namespace ni = nearideal;
namespace oracle = nearideal::oracle;
using ni::Complex;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_complex_near(Complex got, Complex want, double rel) {
  const double tol = rel * std::max(1.0, std::abs(want));
  EXPECT_NEAR(got.real(), want.real(), tol);
  EXPECT_NEAR(got.imag(), want.imag(), tol);
}

std::vector<ni::NearIdealParams> near_ideal_zoo() {
  std::vector<ni::NearIdealParams> out;
  for (double a : {0.1, 0.5, 0.6, 0.8, 0.9, 0.99, 0.999})
    for (double p : {0.55, 0.6, 0.7, 0.95})
      for (int N : {1, 2, 7, 10, 50, 100, 101})
        for (int m : {1, 2, 3}) out.emplace_back(a, p, N, m);
  return out;
}

}  // namespace

TEST(Coefficients, XiMatchesHighPrecision) {
  EXPECT_NEAR(ni::xi_coef(0.6, 0.7), oracle::kXi_06_07, 1e-14);
  EXPECT_NEAR(ni::xi_coef(0.99, 0.6), oracle::kXi_099_06, 1e-16);
  EXPECT_NEAR(ni::xi_coef(0.99, 0.6), std::exp(-std::pow(10.0, 0.8)), 1e-15);
}

TEST(Coefficients, XiVanishesAsAApproachesOne) {
  double prev = ni::xi_coef(0.5, 0.7);
  for (double a : {0.9, 0.99, 0.999, 0.9999, 0.99999}) {
    const double xi = ni::xi_coef(a, 0.7);
    EXPECT_GT(xi, 0.0);
    EXPECT_LT(xi, prev);
    prev = xi;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(Coefficients, GammaMatchesHighPrecision) {
  EXPECT_NEAR(ni::gamma_coef(0.6, 0.7), oracle::kGamma_06_07, 1e-14);
  EXPECT_NEAR(ni::gamma_coef(0.99, 0.6), oracle::kGamma_099_06, 1e-13);
}

TEST(Coefficients, GammaOverXiIsPowerOfOneMinusA) {
  for (double a : {0.1, 0.6, 0.9, 0.99})
    for (double p : {0.55, 0.7, 0.9}) {
      const double ratio = ni::gamma_coef(a, p) / ni::xi_coef(a, p);
      EXPECT_NEAR(ratio / std::pow(1.0 - a, p - 2.0), 1.0, 1e-12);
    }
}

TEST(Coefficients, RejectOutOfRangeArguments) {
  EXPECT_THROW(ni::xi_coef(1.0, 0.7), ni::DomainError);
  EXPECT_THROW(ni::xi_coef(0.6, 0.5), ni::DomainError);
  EXPECT_THROW(ni::gamma_coef(0.0, 0.7), ni::DomainError);
}

TEST(Params, ConstructorsValidate) {
  EXPECT_THROW(ni::NearIdealParams(0.0, 0.7, 10, 1), ni::DomainError);
  EXPECT_THROW(ni::NearIdealParams(1.0, 0.7, 10, 1), ni::DomainError);
  EXPECT_THROW(ni::NearIdealParams(0.5, 0.5, 10, 1), ni::DomainError);
  EXPECT_THROW(ni::NearIdealParams(0.5, 1.0, 10, 1), ni::DomainError);
  EXPECT_THROW(ni::NearIdealParams(0.5, 0.7, 0, 1), ni::DomainError);
  EXPECT_THROW(ni::NearIdealParams(0.5, 0.7, 10, 0), ni::DomainError);
  EXPECT_THROW(ni::ReferenceParams(0.0, 1.01), ni::DomainError);
  EXPECT_THROW(ni::ReferenceParams(0.02, 1.0), ni::DomainError);
  EXPECT_THROW(ni::PredictorParams(0.0, 1.1), ni::DomainError);
  EXPECT_THROW(ni::PredictorParams(1.1, 0.0), ni::DomainError);
  EXPECT_NO_THROW(ni::NearIdealParams(0.99, 0.6, 50, 2));
}

TEST(Psi, ValueAtOne) {
  const ni::NearIdealParams prm(0.6, 0.7, 100, 2);
  expect_complex_near(ni::eval_psi(prm, 1.0), {oracle::kPsi_06_07_at_1, 0.0}, 1e-14);
}

TEST(Psi, ValueAtMinusOne) {
  for (const auto& prm : near_ideal_zoo()) {
    const Complex v = ni::eval_psi(prm, -1.0);
    EXPECT_NEAR(v.real(), -std::pow(1.0 - prm.a(), prm.p() - 1.0), 1e-12 * std::abs(v.real()));
    EXPECT_EQ(v.imag(), 0.0);
  }
}

TEST(Psi, BoundedByOneWhereCosPlusAIsNonNegative) {
  for (double a : {0.3, 0.6, 0.9, 0.99, 0.999})
    for (double p : {0.55, 0.7, 0.95}) {
      const ni::NearIdealParams prm(a, p, 10, 1);
      const double bound = std::pow(1.0 - a, p - 0.5) / std::sqrt(1.0 + a);
      EXPECT_LE(bound, 1.0);
      for (int j = 0; j <= 4000; ++j) {
        const double w = -kPi + 2 * kPi * j / 4000.0;
        if (std::cos(w) + a < 0.0) continue;
        EXPECT_LE(std::abs(ni::eval_psi(prm, ni::on_circle(w))), bound * (1 + 1e-12)) << a << " " << w;
      }
    }
}

TEST(Psi, PoleIsGuarded) {
  const ni::NearIdealParams prm(0.6, 0.7, 10, 1);
  EXPECT_THROW(ni::eval_psi(prm, -0.6), ni::SingularityError);
}

TEST(G, ValueAtOneForEvenN) {
  const ni::NearIdealParams prm(0.6, 0.7, 100, 2);
  expect_complex_near(ni::eval_g(prm, 1.0), {-oracle::kXi_06_07, 0.0}, 1e-14);
}

TEST(G, EqualsMinusXiAtMinusOne) {
  for (const auto& prm : near_ideal_zoo()) {
    const Complex g = ni::eval_g(prm, -1.0);
    EXPECT_EQ(g.real(), -ni::xi_coef(prm.a(), prm.p()));
    EXPECT_EQ(g.imag(), 0.0);
  }
}

TEST(G, PeriodicTermBoundedOnCircle) {
  for (const auto& prm : near_ideal_zoo()) {
    const double xi = ni::xi_coef(prm.a(), prm.p());
    const double bound = 2.0 * ni::gamma_coef(prm.a(), prm.p()) / prm.N();
    for (int j = 0; j < 257; ++j) {
      const Complex z = ni::on_circle(-kPi + 2 * kPi * j / 257.0);
      EXPECT_LE(std::abs(ni::eval_g(prm, z) + xi), bound * (1 + 1e-12) + 1e-15);
    }
  }
}

TEST(G, OriginIsGuarded) {
  EXPECT_THROW(ni::eval_g(ni::NearIdealParams(0.6, 0.7, 10, 1), 0.0), ni::SingularityError);
}

TEST(NearIdeal, ValueAtOne) {
  const ni::NearIdealParams base_prm(0.6, 0.7, 100, 1);
  const ni::NearIdealParams prm(0.6, 0.7, 100, 2);
  expect_complex_near(ni::eval_near_ideal(base_prm, 1.0), {oracle::kNearIdealBase_06_07_100_at_1, 0.0}, 1e-14);
  expect_complex_near(ni::eval_near_ideal(prm, 1.0), {oracle::kNearIdeal_06_07_100_2_at_1, 0.0}, 1e-14);
}

TEST(NearIdeal, ComplexValuesMatchHighPrecision) {
  expect_complex_near(ni::eval_near_ideal(ni::NearIdealParams(0.8, 0.6, 10, 1), ni::on_circle(0.7)),
                      oracle::kNearIdeal_08_06_10_1_at_w07, 1e-12);
  expect_complex_near(ni::eval_near_ideal(ni::NearIdealParams(0.99, 0.6, 50, 2), ni::on_circle(2.5)),
                      oracle::kNearIdeal_099_06_50_2_at_w25, 1e-12);
  expect_complex_near(ni::eval_near_ideal(ni::NearIdealParams(0.6, 0.7, 101, 3), Complex{1.3, -0.4}),
                      oracle::kNearIdeal_06_07_101_3_at_z, 1e-12);
}

TEST(NearIdeal, VanishesAtMinusOne) {
  for (const auto& prm : near_ideal_zoo()) EXPECT_LE(std::abs(ni::eval_near_ideal(prm, -1.0)), 1e-12);
}

TEST(NearIdeal, DoesNotVanishWithoutCorrectionTerm) {
  const ni::NearIdealParams prm(0.6, 0.7, 100, 1);
  EXPECT_NEAR(std::abs(ni::eval_near_ideal(prm, -1.0, ni::NearIdealTerms::kExpOnly)), oracle::kXi_06_07, 1e-14);
}

TEST(NearIdeal, BoundedGainPerA) {
  for (double p : {0.55, 0.6, 0.7, 0.95})
    for (int N : {1, 10, 50})
      for (int m : {1, 2}) {
        for (double a : {0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99}) {
          const ni::NearIdealParams prm(a, p, N, m);
          const double bound = std::numbers::e + ni::xi_coef(a, p) + 2.0 * ni::gamma_coef(a, p) / N;
          for (int j = 0; j <= 2048; ++j) {
            const double w = kPi * j / 2048.0;
            EXPECT_LE(std::pow(std::abs(ni::eval_near_ideal(prm, ni::on_circle(w))), 1.0 / m), bound);
          }
        }
      }
}

TEST(Reference, ValuesMatchHighPrecision) {
  const ni::ReferenceParams prm(0.02, 1.01);
  EXPECT_NEAR(ni::eval_reference(prm, 0.0), oracle::kReference_002_101_at_0, 1e-15);
  EXPECT_NEAR(ni::eval_reference(prm, 2.0), oracle::kReference_002_101_at_2, 1e-14);
}

TEST(Reference, LimitZeroAtPi) {
  const ni::ReferenceParams prm(0.02, 1.01);
  EXPECT_EQ(ni::eval_reference(prm, kPi), 0.0);
  EXPECT_EQ(ni::eval_reference(prm, -kPi), 0.0);
}

TEST(Reference, MonotoneInMu) {
  for (int j = 0; j <= 1000; ++j) {
    const double w = -kPi + 2 * kPi * j / 1000.0;
    double prev = 1.0;
    for (double mu : {0.001, 0.01, 0.02, 0.1, 1.0}) {
      const double v = ni::eval_reference(ni::ReferenceParams(mu, 1.01), w);
      EXPECT_LE(v, prev);
      prev = v;
    }
  }
}

TEST(Predictor, ValuesMatchHighPrecision) {
  const ni::PredictorParams prm(1.1, 1.1);
  expect_complex_near(ni::eval_predictor(prm, 1.0), {oracle::kPredictor_11_11_at_1, 0.0}, 1e-14);
  expect_complex_near(ni::eval_predictor(prm, -1.0), {oracle::kPredictor_11_11_at_m1, 0.0}, 1e-14);
  expect_complex_near(ni::eval_predictor(prm, ni::on_circle(1.2)), oracle::kPredictor_11_11_at_w12, 1e-10);
}

TEST(Predictor, PoleIsGuarded) {
  const ni::PredictorParams prm(1.1, 1.1);
  const double pole = -(1.0 - std::pow(1.1, -1.1));
  EXPECT_THROW(ni::eval_predictor(prm, pole), ni::SingularityError);
}

TEST(TransferSpec, ConjugateSymmetryForEveryFamily) {
  std::vector<ni::TransferSpec> specs{
      ni::NearIdealParams(0.99, 0.6, 50, 2), ni::NearIdealParams(0.8, 0.6, 10, 1),
      ni::NearIdealParams(0.6, 0.7, 101, 3), ni::ReferenceParams(0.02, 1.01), ni::PredictorParams(1.1, 1.1),
      ni::TransferSpec::product({ni::PredictorParams(1.1, 1.1), ni::NearIdealParams(0.6, 0.7, 100, 2)})};
  for (const auto& spec : specs)
    for (int j = 1; j < 500; ++j) {
      const double w = kPi * j / 500.0;
      const Complex up = ni::eval_spec(spec, ni::on_circle(w));
      const Complex down = ni::eval_spec(spec, ni::on_circle(-w));
      const double tol = 1e-12 * std::max(1.0, std::abs(up));
      EXPECT_NEAR(down.real(), up.real(), tol) << spec.describe() << " w=" << w;
      EXPECT_NEAR(down.imag(), -up.imag(), tol) << spec.describe() << " w=" << w;
    }
}

TEST(TransferSpec, EmptyProductRejected) {
  EXPECT_THROW(ni::TransferSpec::product({}), ni::DomainError);
}

TEST(TransferSpec, ProductAnnihilatedAtMinusOne) {
  const auto spec = ni::TransferSpec::product({ni::PredictorParams(1.1, 1.1), ni::NearIdealParams(0.6, 0.7, 100, 2)});
  EXPECT_LE(std::abs(ni::eval_spec(spec, -1.0)), 1e-12);
}

TEST(TransferSpec, SingleFactorProductIsIdentity) {
  const ni::NearIdealParams prm(0.8, 0.6, 10, 1);
  const auto single = ni::TransferSpec::product({prm});
  for (int j = 0; j < 100; ++j) {
    const Complex z = ni::on_circle(0.06 * j);
    EXPECT_EQ(ni::eval_spec(single, z), ni::eval_near_ideal(prm, z));
  }
}

TEST(TransferSpec, ProductIsPointwiseProduct) {
  const ni::PredictorParams k(1.1, 1.1);
  const ni::NearIdealParams h(0.6, 0.7, 100, 2);
  const ni::ReferenceParams mref(0.02, 1.01);
  const auto spec = ni::TransferSpec::product({k, h, mref});
  for (int j = 0; j < 100; ++j) {
    const double w = -3.1 + 0.062 * j;
    const Complex z = ni::on_circle(w);
    const Complex want = ni::eval_predictor(k, z) * ni::eval_near_ideal(h, z) * ni::eval_reference(mref, w);
    expect_complex_near(ni::eval_spec(spec, z), want, 1e-13);
  }
}

TEST(TransferSpec, ReferenceOffCircleRejected) {
  EXPECT_THROW(ni::eval_spec(ni::ReferenceParams(0.02, 1.01), Complex{1.5, 0.0}), ni::DomainError);
}

TEST(TransferSpec, ContainsNearIdeal) {
  EXPECT_TRUE(ni::TransferSpec(ni::NearIdealParams(0.6, 0.7, 10, 1)).contains_near_ideal());
  EXPECT_FALSE(ni::TransferSpec(ni::PredictorParams(1.1, 1.1)).contains_near_ideal());
  EXPECT_TRUE(ni::TransferSpec::product({ni::PredictorParams(1.1, 1.1), ni::NearIdealParams(0.6, 0.7, 10, 1)})
                  .contains_near_ideal());
}

TEST(IntegerPower, AgreesWithRepeatedMultiplication) {
  const Complex z{0.3, -1.7};
  Complex acc{1.0, 0.0};
  for (int n = 0; n <= 12; ++n) {
    expect_complex_near(ni::detail::ipow(z, n), acc, 1e-13);
    expect_complex_near(ni::detail::ipow(z, -n), 1.0 / acc, 1e-13);
    acc *= z;
  }
  EXPECT_EQ(ni::detail::ipow(Complex{-1.0, 0.0}, 101), Complex(-1.0, 0.0));
}
