#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "leechps/arith.hpp"
#include "leechps/error.hpp"

using namespace leechps;
using namespace leechps::arith;

TEST(Arith, GcdAndMod) {
  EXPECT_EQ(gcd(12, -18), 6);
  EXPECT_EQ(gcd(0, 7), 7);
  EXPECT_EQ(mod(-3, 5), 2);
  EXPECT_EQ(mod(10, 5), 0);
}

TEST(Arith, ModInverseAgainstSearch) {
  for (std::int64_t n = 2; n <= 60; ++n) {
    for (std::int64_t a = 1; a < n; ++a) {
      if (std::gcd(a, n) != 1) {
        EXPECT_THROW(mod_inverse(a, n), UsageError);
        continue;
      }
      std::int64_t want = -1;
      for (std::int64_t x = 0; x < n; ++x)
        if ((a * x) % n == 1) want = x;
      EXPECT_EQ(mod_inverse(a, n), want) << a << " mod " << n;
    }
  }
}

TEST(Arith, Factor) {
  const auto f = factor(2 * 2 * 3 * 49 * 101);
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f[0].p, 2);
  EXPECT_EQ(f[0].r, 2);
  EXPECT_EQ(f[2].p, 7);
  EXPECT_EQ(f[2].r, 2);
  EXPECT_EQ(as_prime_power(128).r, 7);
  EXPECT_THROW(as_prime_power(12), UsageError);
  EXPECT_TRUE(is_prime(101));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(divisor_count(36), 9);
}

TEST(Arith, JacobiAgainstEulerCriterion) {
  for (std::int64_t p : {3, 5, 7, 11, 13, 101}) {
    for (std::int64_t a = 0; a < p; ++a) {
      int want = 0;
      if (a != 0) {
        bool square = false;
        for (std::int64_t x = 1; x < p; ++x) square |= (x * x) % p == a;
        want = square ? 1 : -1;
      }
      EXPECT_EQ(jacobi_symbol(a, p), want) << a << "|" << p;
    }
  }
  EXPECT_EQ(jacobi_symbol(1, 9), 1);
  EXPECT_EQ(jacobi_symbol(2, 7), 1);
  EXPECT_EQ(jacobi_symbol(2, 15), jacobi_symbol(2, 3) * jacobi_symbol(2, 5));
  EXPECT_THROW(jacobi_symbol(1, 8), UsageError);
}

TEST(Arith, EpsilonFactor) {
  EXPECT_EQ(epsilon_factor(5), std::complex<double>(1, 0));
  EXPECT_EQ(epsilon_factor(7), std::complex<double>(0, 1));
}

TEST(Arith, JordanTotientValues) {
  EXPECT_EQ(jordan_totient(3, 1), 1);
  EXPECT_EQ(jordan_totient(4, 2), 15);
  EXPECT_EQ(jordan_totient(12, 2), 4095);
  EXPECT_EQ(jordan_totient(1, 36), 12);
}

TEST(Arith, JordanTotientCountsPrimitiveTuples) {
  // J_2(n) = #{(x, y) mod n : gcd(x, y, n) = 1}
  for (std::int64_t n = 1; n <= 30; ++n) {
    std::int64_t count = 0;
    for (std::int64_t x = 0; x < n; ++x)
      for (std::int64_t y = 0; y < n; ++y) count += std::gcd(std::gcd(x, y), n) == 1;
    EXPECT_EQ(jordan_totient(2, n), count) << n;
  }
}

TEST(Arith, JordanTotientDivisorSum) {
  for (int k : {1, 2, 4}) {
    for (std::int64_t n = 1; n <= 10000; n += (n < 200 ? 1 : 97)) {
      BigInt sum = 0;
      for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        sum += jordan_totient(k, d);
        if (d * d != n) sum += jordan_totient(k, n / d);
      }
      EXPECT_EQ(sum, boost::multiprecision::pow(BigInt(n), k)) << k << " " << n;
    }
  }
}
