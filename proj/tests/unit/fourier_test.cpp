#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "leechps/enumerate.hpp"
#include "leechps/error.hpp"
#include "leechps/fourier.hpp"
#include "leechps/lattice.hpp"
#include "leechps/special.hpp"

using namespace leechps;
using namespace leechps::analytic;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> test_point() {
  std::vector<double> v = {0.13, -0.21, 0.07, 0.29, -0.11, 0.17, -0.03, 0.23, -0.27, 0.19, 0.05, -0.13,
                           0.11, -0.07, 0.25, -0.19, 0.03, 0.21, -0.23, 0.09, -0.17, 0.15, -0.29, 0.01};
  for (auto& x : v) x *= 0.5;
  return v;
}

TruncationPolicy small_policy() {
  TruncationPolicy p;
  p.n_max = 4;
  p.lambda_radius_sq = 4.0;
  return p;
}

}  // namespace

TEST(LeechTheta, PoissonAtOrigin) {
  const auto leech = lattice::construct_leech();
  const std::vector<double> zero(24, 0.0);
  const Complex lhs = leech_theta(*leech, zero, 1.0);
  const Complex rhs = std::pow(kPi, 12) * leech_theta(*leech, zero, kPi * kPi);
  EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::abs(lhs));
  // Theta(alpha) = sum_n N(n) q^n, q = e^-alpha, with the known Leech shell sizes.
  const double q = std::exp(-4.0);
  const std::vector<std::pair<int, double>> shells = {{4, 196560.0},         {6, 16773120.0},
                                                      {8, 398034000.0},      {10, 4629381120.0},
                                                      {12, 34417656000.0},   {14, 187489935360.0},
                                                      {16, 814879774800.0}};
  double series = 0.0;
  for (const auto& [n, count] : shells) series += count * std::pow(q, n);
  EXPECT_NEAR(leech_theta(*leech, zero, 4.0).real() - 1.0, series, 1e-15);
}

TEST(LeechTheta, ShiftedPoissonAgainstEnumeration) {
  // sum_l exp(-a l^2) e(<l, v>) = (pi/a)^12 sum_l exp(-pi^2 (l - v)^2 / a)
  const auto leech = lattice::construct_leech();
  const auto v = test_point();
  const double alpha = 0.5;
  double dual = 0.0;
  for (const auto& l : lattice::short_vectors(*leech, v, 3.0)) {
    std::vector<double> d(24);
    for (int i = 0; i < 24; ++i) d[i] = static_cast<double>(l[i]) - v[i];
    dual += std::exp(-kPi * kPi * lattice::norm(*leech, std::span<const double>(d)) / alpha);
  }
  dual *= std::pow(kPi / alpha, 12);
  const Complex got = leech_theta(*leech, v, alpha);
  EXPECT_LT(std::abs(got - dual), 1e-11 * std::abs(dual));
  EXPECT_LT(std::abs(got.imag()), 1e-11 * std::abs(dual));
}

TEST(LeechTheta, SmallShellsDirectly) {
  const auto leech = lattice::construct_leech();
  const auto v = test_point();
  // Shells beyond norm 6 contribute at most 398034000 e^-56 < 1e-15.
  const double alpha = 7.0;
  const std::vector<double> zero(24, 0.0);
  Complex brute = 0.0;
  lattice::ShortVectorEnumerator en(*leech);
  en.visit(zero, 6.0, Budget{}, [&](std::span<const std::int64_t> l, std::int64_t nrm, double) {
    brute += std::exp(-alpha * static_cast<double>(nrm)) *
             std::polar(1.0, 2.0 * kPi * lattice::inner(*leech, l, std::span<const double>(v)));
  });
  const Complex got = leech_theta(*leech, v, alpha);
  EXPECT_GT(std::abs(brute - 1.0), 1e-9);
  EXPECT_LT(std::abs(got - brute), 3e-14);
  EXPECT_THROW(leech_theta(*lattice::construct_e8(), std::vector<double>(8, 0.0), 1.0), UsageError);
}

TEST(Radial, QuadratureMatchesClosedForm) {
  for (double l2 : {0.0, 4.0, 6.0, 10.0})
    for (double c : {std::sqrt(2.0), std::sqrt(3.5)})
      for (Complex s : {Complex(30.0, 0.0), Complex(26.0, 3.0)}) {
        const auto r = radial_integral_oracle(l2, c, s);
        EXPECT_LT(std::abs(r.quadrature - r.closed), 1e-10 * std::abs(r.closed) + r.quad_error) << l2 << " " << c;
      }
  EXPECT_THROW(radial_integral_oracle(0.0, 1.0, Complex(12.0, 0.0)), DomainError);
  EXPECT_THROW(radial_integral_oracle(4.0, 1.0, Complex(6.0, 0.0)), DomainError);
}

TEST(Coefficients, ZeroVectorSingleHeight) {
  const auto leech = lattice::construct_leech();
  const SliceParams p(1.0, 0.5);
  TruncationPolicy pol;
  pol.n_max = 1;
  const double s = 30.0;
  const auto c = fourier_coeff(*leech, lattice::Coords(24, 0), p, Complex(s, 0.0), pol);
  // (1 + e(-s/2)) Gamma(s - 12) pi^(12 - s) (c_1^2)^(12 - s), j_{0,1} = 1
  const double a_star = 2.0 * std::tgamma(s - 12.0) * std::pow(kPi, 12.0 - s) * std::pow(2.0, 12.0 - s);
  EXPECT_LT(std::abs(c.a_star - a_star), 1e-12 * a_star);
  const double g = std::pow(0.5 / (2.0 * kPi), s) * std::tgamma(s);
  EXPECT_LT(std::abs(c.a - a_star / g), 1e-12 * a_star / g);
  EXPECT_LT(std::abs(c.a_first - c.a), 1e-12 * std::abs(c.a));
}

TEST(Coefficients, NormalisationRatio) {
  const auto leech = lattice::construct_leech();
  const SliceParams p(1.0, 0.5);
  const auto pol = small_policy();
  const std::vector<double> zero(24, 0.0);
  const auto lam = lattice::short_vectors(*leech, zero, 4.0)[0];
  for (Complex s : {Complex(30.0, 0.0), Complex(27.5, 2.0)}) {
    const auto c = fourier_coeff(*leech, lam, p, s, pol);
    const Complex g = std::exp(s * std::log(p.h / (2.0 * kPi))) * gamma_complex(s);
    EXPECT_LT(std::abs(c.a_star / c.a - g), 1e-12 * std::abs(g));
  }
}

TEST(Coefficients, PoleAtGammaArgument) {
  const auto leech = lattice::construct_leech();
  EXPECT_THROW(fourier_coeff(*leech, lattice::Coords(24, 0), SliceParams(1.0, 0.5), Complex(12.0, 0.0), small_policy()),
               PoleError);
  EXPECT_THROW(fourier_coeff(*lattice::construct_ii11(), lattice::Coords(2, 0), SliceParams(), Complex(30.0, 0.0),
                             small_policy()),
               UsageError);
}

TEST(Coefficients, TailBoundCoversLongerTruncation) {
  const SliceParams p(1.0, 0.5);
  for (std::int64_t half : {0, 2, 3, 8}) {
    const lattice::Content content = half == 0 ? lattice::Content{} : lattice::Content{1};
    for (std::int64_t n : {1, 2, 4}) {
      TruncationPolicy a, b;
      a.n_max = n;
      b.n_max = 2 * n;
      const auto ca = fourier_coeff_invariants(24, half, content, p, Complex(30.0, 0.0), a);
      const auto cb = fourier_coeff_invariants(24, half, content, p, Complex(30.0, 0.0), b);
      EXPECT_EQ(ca.tail_kind, TailKind::kRigorous);
      EXPECT_LE(std::abs(ca.a - cb.a), ca.tail_bound * (1 + 1e-9) + 1e-300) << half << " " << n;
    }
  }
}

TEST(Coefficients, DecayWithNorm) {
  const SliceParams p(1.0, 0.5);
  const auto pol = small_policy();
  double prev = std::abs(fourier_coeff_invariants(24, 2, lattice::Content{1}, p, Complex(30.0, 0.0), pol).a);
  for (std::int64_t half = 3; half <= 12; ++half) {
    const double cur = std::abs(fourier_coeff_invariants(24, half, lattice::Content{1}, p, Complex(30.0, 0.0), pol).a);
    EXPECT_LT(cur, prev);
    prev = cur;
  }
}

TEST(FourierEval, RealAtEvenIntegers) {
  const auto leech = lattice::construct_leech();
  const auto r = fourier_poincare(*leech, test_point(), SliceParams(1.0, 0.5), Complex(30.0, 0.0), small_policy());
  EXPECT_LT(std::abs(r.value.imag()), 1e-9 * std::abs(r.value));
  EXPECT_EQ(r.tail_kind, TailKind::kRigorous);
  EXPECT_LT(r.tail_estimate, 1e-3 * std::abs(r.value));
}

TEST(FourierEval, Periodic) {
  const auto leech = lattice::construct_leech();
  const auto v = test_point();
  std::vector<double> w(v);
  const std::vector<double> zero(24, 0.0);
  const auto mu = lattice::short_vectors(*leech, zero, 4.0).back();
  for (int i = 0; i < 24; ++i) w[i] += static_cast<double>(mu[i]);
  const SliceParams p(1.0, 0.5);
  const auto a = fourier_poincare(*leech, v, p, Complex(30.0, 0.0), small_policy());
  const auto b = fourier_poincare(*leech, w, p, Complex(30.0, 0.0), small_policy());
  EXPECT_LT(std::abs(a.value - b.value), 1e-12 * std::abs(a.value));
}

TEST(FourierEval, IndependentOfBasis) {
  const auto leech = lattice::construct_leech();
  std::vector<int> perm(24), signs(24);
  for (int i = 0; i < 24; ++i) {
    perm[i] = (7 * i + 3) % 24;
    signs[i] = i % 3 == 0 ? -1 : 1;
  }
  const auto other = lattice::permuted_basis(leech, perm, signs, "leech-test");
  EXPECT_NE(other->hash(), leech->hash());
  const auto v = test_point();
  std::vector<double> w(24);
  for (int i = 0; i < 24; ++i) w[i] = signs[i] * v[perm[i]];
  const SliceParams p(1.0, 0.5);
  const auto a = fourier_poincare(*leech, v, p, Complex(30.0, 0.0), small_policy());
  const auto b = fourier_poincare(*other, w, p, Complex(30.0, 0.0), small_policy());
  EXPECT_LT(std::abs(a.value - b.value), 1e-10 * std::abs(a.value));
}

TEST(FourierEval, PureShellAgreesWithinTail) {
  const auto leech = lattice::construct_leech();
  const SliceParams p(1.0, 0.5);
  auto pol = small_policy();
  pol.lambda_radius_sq = 6.0;
  FourierOptions shells;
  shells.theta_bulk = false;
  const auto a = fourier_poincare(*leech, test_point(), p, Complex(30.0, 0.0), pol);
  const auto b = fourier_poincare(*leech, test_point(), p, Complex(30.0, 0.0), pol, Budget{}, shells);
  EXPECT_LE(std::abs(a.value - b.value), a.tail_estimate + b.tail_estimate);
  EXPECT_FALSE(b.extra["thetaBulk"].get<bool>());
}

TEST(FourierEval, NoTailBoundBelowConvergence) {
  const auto leech = lattice::construct_leech();
  const auto r = fourier_poincare(*leech, test_point(), SliceParams(1.0, 0.5), Complex(20.0, 0.0), small_policy());
  EXPECT_TRUE(r.has_flag("no-tail-bound"));
  EXPECT_TRUE(std::isinf(r.tail_estimate));
}
