#include "leechps/arith.hpp"

#include <cstdlib>
#include <string>

#include "leechps/error.hpp"

namespace leechps::arith {

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
  if (n <= 0) throw UsageError("mod_inverse: modulus must be positive");
  if (n == 1) return 0;
  std::int64_t old_r = mod(a, n), r = n;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  if (old_r != 1)
    throw UsageError("mod_inverse: " + std::to_string(a) + " is not a unit mod " +
                     std::to_string(n));
  return mod(old_s, n);
}

std::int64_t pow_int(std::int64_t base, int exp) {
  std::int64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(result, base, &result))
      throw UsageError("pow_int: overflow");
  }
  return result;
}

PrimePowerFactorization factor(std::int64_t n) {
  if (n <= 0) throw UsageError("factor: argument must be positive");
  PrimePowerFactorization out;
  for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int r = 0;
    while (n % p == 0) {
      n /= p;
      ++r;
    }
    out.push_back({p, r});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

PrimePower as_prime_power(std::int64_t n) {
  if (n < 2) throw UsageError("expected a prime power, got " + std::to_string(n));
  auto f = factor(n);
  if (f.size() != 1)
    throw UsageError("expected a prime power, got " + std::to_string(n));
  return f.front();
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  auto f = factor(n);
  return f.size() == 1 && f.front().r == 1;
}

int divisor_count(std::int64_t n) {
  int d = 1;
  for (const auto& [p, r] : factor(n)) d *= (r + 1);
  return d;
}

int valuation(std::int64_t a, std::int64_t p) {
  if (a == 0) throw UsageError("valuation of zero");
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

int jacobi_symbol(std::int64_t a, std::int64_t n) {
  if (n <= 0 || n % 2 == 0)
    throw UsageError("jacobi_symbol: modulus must be odd and positive");
  a = mod(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

std::complex<double> epsilon_factor(std::int64_t n) {
  if (n <= 0 || n % 2 == 0)
    throw UsageError("epsilon_factor: argument must be odd and positive");
  return n % 4 == 1 ? std::complex<double>(1.0, 0.0) : std::complex<double>(0.0, 1.0);
}

BigInt jordan_totient(int k, std::int64_t n) {
  if (k < 1 || n < 1) throw UsageError("jordan_totient: k and n must be positive");
  BigInt result = 1;
  for (const auto& [p, r] : factor(n)) {
    const BigInt pk = boost::multiprecision::pow(BigInt(p), k);
    // p^{k r} (1 - p^{-k}) = p^{k(r-1)} (p^k - 1)
    result *= boost::multiprecision::pow(pk, r - 1) * (pk - 1);
  }
  return result;
}

double to_double(const BigInt& x) { return x.convert_to<double>(); }

}  // namespace leechps::arith
