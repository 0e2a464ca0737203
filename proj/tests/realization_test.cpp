#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "nearideal/realization.hpp"
#include "nearideal/stream.hpp"
#include "oracle_values.hpp"

namespace ni = nearideal;
using ni::Complex;

namespace {

constexpr double kPi = std::numbers::pi;

const ni::NearIdealParams kSmooth(0.6, 0.7, 100, 2);
const ni::NearIdealParams kSignChanging(0.8, 0.6, 10, 1);
const ni::NearIdealParams kSharp(0.99, 0.6, 50, 2);
const ni::PredictorParams kPredictor(1.1, 1.1);

// (1/2pi) int_{-pi}^{pi} H(e^{iw}) e^{iwt} dw, real part, by adaptive
// Gauss-Kronrod on [0, pi] using conjugate symmetry.
double quadrature_tap(const ni::TransferSpec& spec, int t) {
  auto f = [&](double w) { return (ni::eval_spec(spec, ni::on_circle(w)) * std::polar(1.0, w * t)).real(); };
  double err = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kPi, 25, 1e-13, &err);
  return integral / kPi;
}

}  // namespace

TEST(SampleResponse, GridValidation) {
  EXPECT_THROW(ni::sample_response(kSmooth, 0), ni::DomainError);
  EXPECT_THROW(ni::sample_response(kSmooth, 8), ni::DomainError);
  EXPECT_THROW(ni::sample_response(kSmooth, 100), ni::DomainError);
  EXPECT_NO_THROW(ni::sample_response(kSmooth, 16));
}

TEST(SampleResponse, DcSampleEqualsEvaluationAtOne) {
  const auto r = ni::sample_response(kSmooth, 4096);
  EXPECT_NEAR(r.samples[0].real(), nearideal::oracle::kNearIdeal_06_07_100_2_at_1, 1e-14);
  EXPECT_EQ(r.samples[0].imag(), 0.0);
}

TEST(SampleResponse, ReferenceIsRealAndVanishesAtPi) {
  const auto r = ni::sample_response(ni::ReferenceParams(0.02, 1.01), 1024);
  for (const auto& s : r.samples) EXPECT_EQ(s.imag(), 0.0);
  EXPECT_EQ(r.samples[512], Complex(0.0, 0.0));
}

TEST(SampleResponse, ConjugateSymmetricAndZeroAtPi) {
  for (const ni::TransferSpec& spec :
       {ni::TransferSpec(kSmooth), ni::TransferSpec(kSharp),
        ni::TransferSpec::product({kPredictor, kSmooth})}) {
    const std::size_t L = 2048;
    const auto r = ni::sample_response(spec, L);
    for (std::size_t j = 1; j < L; ++j) {
      const double tol = 1e-10 * std::max(1.0, std::abs(r.samples[j]));
      EXPECT_NEAR(r.samples[L - j].real(), r.samples[j].real(), tol);
      EXPECT_NEAR(r.samples[L - j].imag(), -r.samples[j].imag(), tol);
    }
    EXPECT_LE(std::abs(r.samples[L / 2]), 1e-12);
  }
}

TEST(SampleResponse, DoublingGridKeepsSharedSamplesBitIdentical) {
  const auto coarse = ni::sample_response(kSharp, 1024);
  const auto fine = ni::sample_response(kSharp, 2048);
  for (std::size_t j = 0; j < 1024; ++j) EXPECT_EQ(coarse.samples[j], fine.samples[2 * j]) << j;
}

TEST(Impulse, SignChangingKernelIsCausal) {
  const auto k = ni::impulse_from_spec(kSignChanging, 65536, 200);
  EXPECT_EQ(k.support(), 200u);
  int negatives = 0;
  for (double v : k.taps()) negatives += v < 0.0;
  EXPECT_GT(negatives, 0);
  EXPECT_LE(k.residuals().max_anticausal, 1e-8 * k.max_abs_tap());
  EXPECT_LE(k.residuals().max_imag, 1e-9 * k.max_abs_tap());
}

TEST(Impulse, ReferenceIsNotCausal) {
  EXPECT_THROW(ni::impulse_from_spec(ni::ReferenceParams(0.02, 1.01)), ni::CausalityViolation);
  EXPECT_THROW(ni::impulse_from_spec(ni::TransferSpec::product({kSmooth, ni::ReferenceParams(0.02, 1.01)})),
               ni::CausalityViolation);
}

TEST(Impulse, DcGainMatchesTapSum) {
  for (const ni::TransferSpec& spec : {ni::TransferSpec(kSmooth), ni::TransferSpec(kSignChanging),
                                      ni::TransferSpec(kPredictor)}) {
    const auto k = ni::impulse_from_spec(spec, 65536, 32768);
    EXPECT_NEAR(k.sum(), ni::eval_spec(spec, 1.0).real(), 1e-6) << spec.describe();
  }
}

TEST(Impulse, SupportValidation) {
  EXPECT_THROW(ni::impulse_from_spec(kSmooth, 1024, 0), ni::DomainError);
  EXPECT_THROW(ni::impulse_from_spec(kSmooth, 1024, 513), ni::DomainError);
  EXPECT_THROW(ni::impulse_from_spec(kSmooth, 1000, 10), ni::DomainError);
}

TEST(Impulse, MatchesAdaptiveQuadrature) {
  for (const ni::TransferSpec& spec : {ni::TransferSpec(kSignChanging), ni::TransferSpec(kPredictor),
                                      ni::TransferSpec(ni::NearIdealParams(0.6, 0.7, 10, 2))}) {
    const auto k = ni::impulse_from_spec(spec, 65536, 64);
    for (int t : {0, 1, 5, 20}) EXPECT_NEAR(k[t], quadrature_tap(spec, t), 1e-7) << spec.describe() << " t=" << t;
  }
}

TEST(Impulse, RealizedOnDoubledGridAgrees) {
  for (const ni::TransferSpec& spec : {ni::TransferSpec(kSmooth), ni::TransferSpec(kSharp),
                                      ni::TransferSpec::product({kPredictor, kSmooth})}) {
    const auto k = ni::impulse_from_spec(spec, 65536, 256);
    EXPECT_LE(ni::aliasing_check(spec, 65536, 256), 1e-9 * k.max_abs_tap()) << spec.describe();
  }
}

TEST(Aliasing, CoarseGridFlagsLongMemorySpec) {
  const ni::TransferSpec spec(kSharp);
  const auto k = ni::impulse_from_spec(spec, 65536, 8);
  EXPECT_GT(ni::aliasing_check(spec, 16, 8), 1e-3 * k.max_abs_tap());
  EXPECT_THROW(ni::impulse_from_spec(spec, 16, 8), std::runtime_error);
}

TEST(Aliasing, SmoothSpecPassesAtDefaultGrid) {
  const ni::TransferSpec spec(kSmooth);
  const auto k = ni::impulse_from_spec(spec, 65536, 256);
  EXPECT_LE(ni::aliasing_check(spec, 65536, 256), 1e-9 * k.max_abs_tap());
}

TEST(Aliasing, SingleFactorProductBehavesAsFactor) {
  const auto a = ni::impulse_from_spec(kSmooth, 4096, 128);
  const auto b = ni::impulse_from_spec(ni::TransferSpec::product({kSmooth}), 4096, 128);
  for (std::size_t t = 0; t < 128; ++t) EXPECT_EQ(a[t], b[t]);
}

TEST(RoundTrip, ForwardTransformOfTapsReproducesSamples) {
  const std::size_t L = 4096;
  const ni::TransferSpec spec(ni::NearIdealParams(0.6, 0.7, 10, 2));
  const auto k = ni::impulse_from_spec(spec, L, L / 2);
  std::vector<Complex> padded(L, 0.0);
  for (std::size_t t = 0; t < k.support(); ++t) padded[t] = k[t];
  // H(e^{iw}) = sum_t h(t) e^{-iwt}: a forward DFT of the taps.
  const auto spectrum = ni::dft::forward(padded);
  const auto samples = ni::sample_response(spec, L);
  for (std::size_t j = 0; j < L; ++j)
    EXPECT_LE(std::abs(spectrum[j] - samples.samples[j]), 1e-6 * std::max(1.0, std::abs(samples.samples[j])));
}

TEST(RoundTrip, InverseOfForwardIsIdentity) {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> nd;
  std::vector<Complex> x(256);
  for (auto& v : x) v = {nd(gen), nd(gen)};
  const auto back = ni::dft::inverse(ni::dft::forward(x));
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_LE(std::abs(back[i] - x[i]), 1e-12);
}

TEST(Truncate, LastLagIsIdentity) {
  const auto k = ni::impulse_from_spec(kSmooth, 4096, 64);
  const auto t = ni::truncate(k, 63);
  ASSERT_EQ(t.support(), 64u);
  for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(t[i], k[i]);
}

TEST(Truncate, ZeroLagKeepsFirstTap) {
  const auto k = ni::impulse_from_spec(kSmooth, 4096, 64);
  const auto t = ni::truncate(k, 0);
  ASSERT_EQ(t.support(), 1u);
  EXPECT_EQ(t[0], k[0]);
}

TEST(Truncate, RejectsLagBeyondSupport) {
  const auto k = ni::impulse_from_spec(kSmooth, 4096, 64);
  EXPECT_THROW(ni::truncate(k, 64), ni::DomainError);
}

TEST(Truncate, ErrorBoundedByDroppedMass) {
  const auto full = ni::impulse_from_spec(kSharp, 65536, 400);
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  for (std::size_t d : {10u, 50u, 100u, 200u}) {
    const auto cut = ni::truncate(full, d);
    double dropped = 0.0;
    for (std::size_t t = d + 1; t < full.support(); ++t) dropped += std::abs(full[t]);
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<double> xs(600);
      double xmax = 0.0;
      for (auto& v : xs) {
        v = ud(gen);
        xmax = std::max(xmax, std::abs(v));
      }
      const ni::Series x(0, xs);
      const auto y_full = ni::convolve(full, x);
      const auto y_cut = ni::convolve(cut, x);
      double worst = 0.0;
      for (std::int64_t t = 0; t < 600; ++t) worst = std::max(worst, std::abs(y_full.at(t) - y_cut.at(t)));
      EXPECT_LE(worst, dropped * xmax * (1 + 1e-12) + 1e-14);
    }
  }
}

TEST(Compose, ConvolutionOfTaps) {
  const ni::Kernel a(std::vector<double>{1.0, 2.0});
  const ni::Kernel b(std::vector<double>{3.0, 0.0, -1.0});
  const auto c = ni::compose(a, b);
  ASSERT_EQ(c.support(), 4u);
  EXPECT_EQ(c[0], 3.0);
  EXPECT_EQ(c[1], 6.0);
  EXPECT_EQ(c[2], -1.0);
  EXPECT_EQ(c[3], -2.0);
}

TEST(KernelCsv, RoundTripIsExact) {
  const auto k = ni::impulse_from_spec(kSignChanging, 4096, 50);
  std::stringstream ss;
  ni::write_kernel_csv(ss, k);
  const auto back = ni::read_kernel_csv(ss);
  ASSERT_EQ(back.support(), k.support());
  for (std::size_t t = 0; t < k.support(); ++t) EXPECT_EQ(back[t], k[t]);
}

TEST(KernelCsv, MalformedInputRejected) {
  std::stringstream bad_header("t,x\n0,1\n");
  EXPECT_THROW(ni::read_kernel_csv(bad_header), ni::ParseError);
  std::stringstream bad_start("t,h\n1,1\n");
  EXPECT_THROW(ni::read_kernel_csv(bad_start), ni::ParseError);
  std::stringstream bad_value("t,h\n0,abc\n");
  EXPECT_THROW(ni::read_kernel_csv(bad_value), ni::ParseError);
  std::stringstream gap("t,h\n0,1\n2,1\n");
  EXPECT_THROW(ni::read_kernel_csv(gap), ni::ParseError);
}
