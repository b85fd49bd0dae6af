#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace leechps::arith {

using BigInt = boost::multiprecision::cpp_int;

struct PrimePower {
  std::int64_t p;
  int r;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Distinct primes in ascending order; the product of p^r equals the input.
using PrimePowerFactorization = std::vector<PrimePower>;

std::int64_t gcd(std::int64_t a, std::int64_t b);

// Non-negative residue of a modulo n (n > 0).
std::int64_t mod(std::int64_t a, std::int64_t n);

// Inverse of a modulo n by extended Euclid, canonical representative in [0, n).
// Throws UsageError when gcd(a, n) != 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t n);

std::int64_t pow_int(std::int64_t base, int exp);

PrimePowerFactorization factor(std::int64_t n);

// Returns the factorisation when n is p^r with r >= 1, throws UsageError otherwise.
PrimePower as_prime_power(std::int64_t n);

bool is_prime(std::int64_t n);

int divisor_count(std::int64_t n);

// p-adic valuation of a nonzero integer.
int valuation(std::int64_t a, std::int64_t p);

// Jacobi symbol (a | n) for odd positive n.
int jacobi_symbol(std::int64_t a, std::int64_t n);

// eps_n = 1 if n = 1 mod 4, i if n = 3 mod 4 (n odd positive).
std::complex<double> epsilon_factor(std::int64_t n);

// J_k(n) = n^k prod_{p | n} (1 - p^{-k}), exact.
BigInt jordan_totient(int k, std::int64_t n);

double to_double(const BigInt& x);

}  // namespace leechps::arith
