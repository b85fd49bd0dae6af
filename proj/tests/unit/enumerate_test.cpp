#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "leechps/enumerate.hpp"
#include "leechps/error.hpp"
#include "leechps/lattice.hpp"

using namespace leechps;
using namespace leechps::lattice;

namespace {

std::int64_t sigma3(std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) s += d * d * d;
  return s;
}

}  // namespace

TEST(Enumerate, E8ShellsMatchEisensteinSeries) {
  const auto counts = shell_counts(*construct_e8(), 8);
  EXPECT_EQ(counts.at(0), 1u);
  for (std::int64_t n = 1; n <= 4; ++n) EXPECT_EQ(counts.at(2 * n), static_cast<std::uint64_t>(240 * sigma3(n)));
}

TEST(Enumerate, TrivialBalls) {
  const std::vector<double> zero8(8, 0.0), zero24(24, 0.0);
  EXPECT_EQ(short_vectors(*construct_e8(), zero8, 0.0).size(), 1u);
  EXPECT_EQ(short_vectors(*construct_e8(), zero8, 2.0).size(), 241u);
  const auto leech = short_vectors(*construct_leech(), zero24, 2.0);
  ASSERT_EQ(leech.size(), 1u);
  EXPECT_EQ(leech[0], Coords(24, 0));
}

TEST(Enumerate, SymmetricAboutLatticeCenters) {
  const auto k = construct_e8();
  const std::vector<double> zero(8, 0.0);
  const auto around0 = short_vectors(*k, zero, 4.0);
  std::set<Coords> s0(around0.begin(), around0.end());
  for (const auto& x : around0) {
    Coords neg = x;
    for (auto& c : neg) c = -c;
    EXPECT_TRUE(s0.count(neg));
  }
  const Coords c = {1, -2, 0, 3, 1, 0, -1, 2};
  const std::vector<double> center(c.begin(), c.end());
  const auto around_c = short_vectors(*k, center, 4.0);
  EXPECT_EQ(around_c.size(), around0.size());
  std::set<Coords> sc(around_c.begin(), around_c.end());
  for (const auto& x : around_c) {
    Coords r(8);
    for (int i = 0; i < 8; ++i) r[i] = 2 * c[i] - x[i];
    EXPECT_TRUE(sc.count(r));
  }
}

TEST(Enumerate, OffCenterMatchesBoxSearch) {
  const GramLattice k("t3", 3, {2, 1, 0, 1, 2, 1, 0, 1, 4}, Signature{});
  const std::vector<double> center = {0.3, -1.7, 0.45};
  const double r2 = 5.37;
  std::set<Coords> want;
  for (int a = -10; a <= 10; ++a)
    for (int b = -10; b <= 10; ++b)
      for (int c = -10; c <= 10; ++c) {
        const std::vector<double> d = {a - center[0], b - center[1], c - center[2]};
        if (norm(k, std::span<const double>(d)) <= r2) want.insert({a, b, c});
      }
  const auto got = short_vectors(k, center, r2);
  EXPECT_EQ(std::set<Coords>(got.begin(), got.end()), want);
  EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
}

TEST(Enumerate, BoundaryVectorsIncluded) {
  const GramLattice k("t2", 2, {2, 1, 1, 2}, Signature{});
  const std::vector<double> center = {0.5, 0.0};
  // (0,0) and (1,0) are both at squared distance 1/2.
  const auto got = short_vectors(k, center, 0.5);
  EXPECT_EQ(got.size(), 2u);
}

TEST(Enumerate, RejectsIndefinite) {
  EXPECT_THROW({ ShortVectorEnumerator en(*construct_ii11()); }, UsageError);
}

TEST(Enumerate, VectorBudget) {
  Budget b;
  b.max_vectors = 100;
  const std::vector<double> zero(8, 0.0);
  EXPECT_THROW(short_vectors(*construct_e8(), zero, 4.0, b), ResourceError);
}

TEST(Enumerate, CosetWalkCoversEveryCosetOnce) {
  const auto k = construct_e8();
  for (std::int64_t n : {2, 3}) {
    const CosetWalker w(*k, n, Budget{});
    EXPECT_EQ(w.coset_count(), static_cast<std::uint64_t>(std::pow(n, 8)));
    const std::vector<std::vector<std::int64_t>> forms = {{1, 2, 3, 4, 5, 6, 7, 8}};
    std::set<Coords> seen;
    w.walk(forms, [&](std::span<const std::int64_t> a, std::int64_t nrm, std::span<const std::int64_t> f) {
      Coords x(a.begin(), a.end());
      for (auto c : x) ASSERT_TRUE(c >= 0 && c < n);
      ASSERT_EQ(nrm, norm(*k, x));
      std::int64_t dot = 0;
      for (int i = 0; i < 8; ++i) dot += forms[0][i] * x[i];
      ASSERT_EQ(f[0], dot);
      seen.insert(std::move(x));
    });
    EXPECT_EQ(seen.size(), w.coset_count());
  }
}

TEST(Enumerate, FilteredCosetCountsPartition) {
  for (const auto& k : {construct_e8(), construct_ii11()}) {
    for (std::int64_t n : {1, 2, 3, 4}) {
      std::uint64_t total = 0;
      for (std::int64_t d = 1; d <= n; ++d) {
        std::uint64_t c = 0;
        coset_enumerate(*k, n, d, Budget{}, [&](std::span<const std::int64_t>, std::int64_t) { ++c; });
        if (n == 1) {
          EXPECT_EQ(c, 1u);
        }
        total += c;
      }
      std::uint64_t all = 0;
      coset_enumerate(*k, n, std::nullopt, Budget{}, [&](std::span<const std::int64_t>, std::int64_t) { ++all; });
      EXPECT_EQ(total, all);
      EXPECT_EQ(all, static_cast<std::uint64_t>(std::pow(n, k->rank())));
    }
  }
}

TEST(Enumerate, KnownCosetCounts) {
  std::uint64_t c = 0;
  coset_enumerate(*construct_e8(), 2, 1, Budget{}, [&](std::span<const std::int64_t>, std::int64_t) { ++c; });
  EXPECT_EQ(c, 120u);
  c = 0;
  coset_enumerate(*construct_ii11(), 2, 1, Budget{}, [&](std::span<const std::int64_t>, std::int64_t) { ++c; });
  EXPECT_EQ(c, 1u);
}

TEST(Enumerate, CosetBudget) {
  EXPECT_THROW(CosetWalker(*construct_leech(), 3, Budget{}), ResourceError);
}
