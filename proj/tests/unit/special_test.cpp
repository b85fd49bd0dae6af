#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "leechps/error.hpp"
#include "leechps/special.hpp"

using namespace leechps;
using namespace leechps::analytic;

namespace {

double series_j(int n, double x) {
  long double term = 1.0L;
  for (int i = 1; i <= n; ++i) term *= 0.5L * x / i;
  long double sum = 0.0L;
  for (int k = 0; k < 200; ++k) {
    sum += term;
    term *= -0.25L * x * x / ((k + 1.0L) * (k + 1.0L + n));
    if (std::fabs(term) < 1e-30L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

}  // namespace

TEST(Gamma, RealAxis) {
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.0, 13.0, 24.5, -0.5, -2.5, -7.3}) {
    const double want = std::tgamma(x);
    EXPECT_LT(std::abs(gamma_complex(Complex(x, 0.0)) - want), 1e-13 * std::abs(want)) << x;
  }
  EXPECT_THROW(gamma_complex(Complex(0.0, 0.0)), PoleError);
  EXPECT_THROW(gamma_complex(Complex(-3.0, 0.0)), PoleError);
}

TEST(Gamma, ReflectionAndLog) {
  for (Complex s : {Complex(0.3, 2.0), Complex(-1.7, 0.4), Complex(5.0, -9.0)}) {
    const Complex lhs = gamma_complex(s) * gamma_complex(1.0 - s);
    const Complex rhs = std::numbers::pi / std::sin(std::numbers::pi * s);
    EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::abs(rhs));
    EXPECT_LT(std::abs(std::exp(log_gamma_complex(s)) - gamma_complex(s)), 1e-12 * std::abs(gamma_complex(s)));
    EXPECT_LT(std::abs(gamma_complex(s + 1.0) - s * gamma_complex(s)), 1e-12 * std::abs(s * gamma_complex(s)));
  }
}

TEST(BesselK, RealOrdersAgainstBoost) {
  for (double nu : {0.0, 0.5, 1.0, 3.3, 11.0, 17.5})
    for (double x : {0.05, 0.7, 2.0, 9.0, 40.0}) {
      const double want = boost::math::cyl_bessel_k(nu, x);
      EXPECT_LT(std::abs(bessel_k(Complex(nu, 0.0), x) - want), 1e-12 * want) << nu << " " << x;
    }
}

TEST(BesselK, HalfOrderClosedForm) {
  for (double x : {0.1, 1.0, 5.0, 30.0}) {
    const double want = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x);
    EXPECT_LT(std::abs(bessel_k(Complex(0.5, 0.0), x) - want), 1e-13 * want);
  }
}

TEST(BesselK, ComplexOrders) {
  for (Complex nu : {Complex(2.0, 3.0), Complex(-6.5, 1.0), Complex(12.0, -20.0)})
    for (double x : {0.5, 3.0, 12.0}) {
      const Complex k = bessel_k(nu, x);
      EXPECT_LT(std::abs(bessel_k(-nu, x) - k), 1e-12 * std::abs(k));
      EXPECT_LT(std::abs(std::conj(bessel_k(std::conj(nu), x)) - k), 1e-12 * std::abs(k));
      // K_{nu+1} - K_{nu-1} = (2 nu / x) K_nu
      const Complex lhs = bessel_k(nu + 1.0, x) - bessel_k(nu - 1.0, x);
      const Complex rhs = 2.0 * nu / x * k;
      EXPECT_LT(std::abs(lhs - rhs), 1e-10 * (std::abs(rhs) + std::abs(bessel_k(nu + 1.0, x))));
    }
}

TEST(Zeta, Values) {
  EXPECT_NEAR(zeta_real(2.0), std::numbers::pi * std::numbers::pi / 6.0, 1e-15);
  EXPECT_NEAR(zeta_real(4.0), std::pow(std::numbers::pi, 4) / 90.0, 1e-15);
  double direct = 0.0;
  for (int n = 20; n >= 1; --n) direct += std::pow(static_cast<double>(n), -30.0);
  EXPECT_NEAR(zeta_real(30.0), direct, 1e-15);
  EXPECT_THROW(zeta_real(1.0), DomainError);
  EXPECT_THROW(zeta_real(0.5), DomainError);
}

TEST(BesselJ11, AgainstSeries) {
  EXPECT_EQ(bessel_j11(0.0), 0.0);
  for (double x : {1e-3, 0.5, 2.0, 7.5, 14.0, 20.0}) {
    const double want = series_j(11, x);
    EXPECT_LT(std::abs(bessel_j11(x) - want), 1e-12 * std::max(std::abs(want), 1e-3)) << x;
  }
}

TEST(Phase, ReducesModOne) {
  EXPECT_LT(std::abs(e_phase(1.0 / 3.0) - Complex(-0.5, std::sqrt(3.0) / 2.0)), 1e-15);
  EXPECT_LT(std::abs(e_phase(1e9 + 0.25) - Complex(0.0, 1.0)), 1e-15);
  EXPECT_LT(std::abs(e_phase(-0.5) + 1.0), 1e-15);
}
