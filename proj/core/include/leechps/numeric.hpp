#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace leechps {

using Complex = std::complex<double>;

// Neumaier's variant of Kahan summation.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    T t = sum_ + x;
    if constexpr (std::is_same_v<T, double>) {
      if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
      else
        comp_ += (x - t) + sum_;
    } else {
      add_part(sum_.real(), x.real(), t.real(), re_);
      add_part(sum_.imag(), x.imag(), t.imag(), im_);
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }
  T value() const {
    if constexpr (std::is_same_v<T, double>)
      return sum_ + comp_;
    else
      return sum_ + T(re_, im_);
  }

 private:
  static void add_part(double s, double x, double t, double& c) {
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
  }
  T sum_{};
  double comp_ = 0.0;
  double re_ = 0.0;
  double im_ = 0.0;
};

// e(num/den) = exp(2 pi i num/den) with the rational argument reduced exactly
// before the trigonometric call.
inline Complex phase_rational(long long num, long long den) {
  long long r = num % den;
  if (r < 0) r += den;
  if (2 * r > den) r -= den;
  const double x = 2.0 * std::numbers::pi * static_cast<double>(r) /
                   static_cast<double>(den);
  return {std::cos(x), std::sin(x)};
}

inline double rel_diff(Complex a, Complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace leechps
