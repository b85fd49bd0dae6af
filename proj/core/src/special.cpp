#include "leechps/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "leechps/error.hpp"

namespace leechps::analytic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

void check_pole(Complex s) {
  if (s.imag() == 0.0 && s.real() <= 0.0 && std::floor(s.real()) == s.real())
    throw PoleError("Gamma has a pole at " + std::to_string(s.real()));
}

Complex log_gamma_right(Complex s) {
  // s with Re s >= 1/2.
  const Complex z = s - 1.0;
  Complex a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

Complex e_phase(double x) {
  const double r = x - std::round(x);
  return {std::cos(2.0 * kPi * r), std::sin(2.0 * kPi * r)};
}

Complex log_gamma_complex(Complex s) {
  check_pole(s);
  if (s.real() < 0.5) return std::log(kPi) - std::log(std::sin(kPi * s)) - log_gamma_right(1.0 - s);
  return log_gamma_right(s);
}

Complex gamma_complex(Complex s) {
  check_pole(s);
  if (s.real() < 0.5) return kPi / (std::sin(kPi * s) * gamma_complex(1.0 - s));
  return std::exp(log_gamma_right(s));
}

Complex bessel_k(Complex nu, double x, double rel_tol) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_k: x must be positive and finite");
  constexpr double kMaxTheta = kPi / 2 - 0.15;
  const Complex saddle = std::asinh(nu / x);
  const double theta = std::clamp(saddle.imag(), -kMaxTheta, kMaxTheta);
  const double ct = std::cos(theta);
  // Log-magnitude of the integrand along the contour and its maximiser.
  auto logmag = [&](double u) { return -x * ct * std::cosh(u) + nu.real() * u - nu.imag() * theta; };
  const double uc = std::asinh(nu.real() / (x * ct));
  const double gmax = logmag(uc);
  constexpr double kDrop = 46.0;
  auto edge = [&](double dir) {
    double step = 0.5;
    double u = uc;
    while (logmag(u + dir * step) > gmax - kDrop) {
      u += dir * step;
      step *= 2.0;
    }
    // Bisect between u and u + dir*step.
    double lo = u, hi = u + dir * step;
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (logmag(mid) > gmax - kDrop ? lo : hi) = mid;
    }
    return hi;
  };
  const double ua = edge(-1.0), ub = edge(1.0);
  const Complex i_theta(0.0, theta);
  auto f = [&](double u) {
    const Complex w = Complex(u, 0.0) + i_theta;
    return std::exp(-x * std::cosh(w) + nu * w - gmax);
  };
  int n = 32;
  double h = (ub - ua) / n;
  Complex sum = 0.5 * (f(ua) + f(ub));
  double abs_sum = 0.5 * (std::abs(f(ua)) + std::abs(f(ub)));
  for (int i = 1; i < n; ++i) {
    const Complex v = f(ua + i * h);
    sum += v;
    abs_sum += std::abs(v);
  }
  Complex prev = sum * h;
  double achieved = 1.0;
  for (int level = 0; level < 16; ++level) {
    Complex mids = 0.0;
    for (int i = 0; i < n; ++i) {
      const Complex v = f(ua + (i + 0.5) * h);
      mids += v;
      abs_sum += std::abs(v);
    }
    sum += mids;
    n *= 2;
    h *= 0.5;
    const Complex cur = sum * h;
    // Rounding floor: cancellation along the contour limits attainable accuracy.
    const double noise = 1e-15 * abs_sum * h;
    const double diff = std::abs(cur - prev);
    achieved = std::abs(cur) > 0.0 ? diff / std::abs(cur) : diff;
    if (level >= 2 && diff <= rel_tol * std::abs(cur) + noise) return 0.5 * cur * std::exp(gmax);
    prev = cur;
  }
  throw AccuracyError("bessel_k: trapezoid rule did not converge", achieved);
}

double zeta_real(double s) {
  if (!(s > 1.0)) throw DomainError("zeta_real: requires s > 1");
  return boost::math::zeta(s);
}

double bessel_j11(double x) {
  if (x < 0.0) throw DomainError("bessel_j11: requires x >= 0");
  return boost::math::cyl_bessel_j(11, x);
}

}  // namespace leechps::analytic
