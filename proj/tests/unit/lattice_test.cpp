#include <gtest/gtest.h>

#include <bit>

#include "leechps/enumerate.hpp"
#include "leechps/error.hpp"
#include "leechps/lattice.hpp"

using namespace leechps;
using namespace leechps::lattice;

TEST(Lattice, II11InnerProduct) {
  const auto k = construct_ii11();
  const Coords e = {1, 0}, f = {0, 1};
  EXPECT_EQ(inner(*k, e, f), -1);
  EXPECT_EQ(norm(*k, Coords{3, 2}), -12);
  EXPECT_EQ(k->signature(), (Signature{1, 1}));
  EXPECT_TRUE(k->even());
  EXPECT_EQ(k->det(), -1);
}

TEST(Lattice, ZeroVectorIsOrthogonalToEverything) {
  const auto k = construct_e8();
  const Coords zero(8, 0);
  for (int i = 0; i < 8; ++i) {
    Coords y(8, 0);
    y[i] = 3;
    EXPECT_EQ(inner(*k, zero, y), 0);
  }
}

TEST(Lattice, E8Invariants) {
  const auto k = construct_e8();
  EXPECT_EQ(k->rank(), 8);
  EXPECT_EQ(norm(*k, Coords{1, 0, 0, 0, 0, 0, 0, 0}), 2);
  EXPECT_EQ(k->det(), 1);
  EXPECT_EQ(k->signature(), (Signature{8, 0}));
  const auto cert = k->certificates();
  EXPECT_EQ(cert.shell_counts.at(2), 240u);
  EXPECT_EQ(cert.shell_counts.at(4), 2160u);
  EXPECT_EQ(cert.min_norm, 2);
}

TEST(Lattice, ContentRules) {
  const auto k = construct_e8();
  EXPECT_EQ(content(Coords{1, 0, 0, 0, 0, 0, 0, 0}), Content{1});
  EXPECT_EQ(content(Coords{3, -6, 0, 9, 0, 0, 0, 0}), Content{3});
  EXPECT_TRUE(content(Coords(8, 0)).is_all());
  EXPECT_TRUE(content(Coords(8, 0)).divisible_by(12345));
  const Coords v = {2, -4, 6, 0, 0, 10, 0, 0};
  for (std::int64_t m = 1; m <= 5; ++m) {
    Coords w = v;
    for (auto& x : w) x *= m;
    EXPECT_EQ(*content(w).value, m * *content(v).value);
  }
}

TEST(Lattice, DirectSum) {
  const auto e8ii = direct_sum(construct_e8(), construct_ii11());
  EXPECT_EQ(e8ii->rank(), 10);
  EXPECT_EQ(e8ii->det(), -1);
  const auto lii = direct_sum(construct_leech(), construct_ii11());
  EXPECT_EQ(lii->rank(), 26);
  EXPECT_EQ(lii->signature(), (Signature{25, 1}));
  const auto same = direct_sum(construct_e8(), rank_zero());
  EXPECT_EQ(same->gram_matrix(), construct_e8()->gram_matrix());
  EXPECT_EQ(same->hash(), construct_e8()->hash());
}

TEST(Lattice, ConstructorRejectsBadGram) {
  EXPECT_THROW(GramLattice("asym", 2, {2, 1, 0, 2}, Signature{}), UsageError);
  EXPECT_THROW(GramLattice("singular", 2, {2, 2, 2, 2}, Signature{}), UsageError);
  EXPECT_THROW(GramLattice("wrong-sig", 2, {2, 1, 1, 2}, Signature{1, 1}), Error);
  const GramLattice odd("odd", 1, {1}, Signature{});
  EXPECT_FALSE(odd.even());
}

TEST(Lattice, GolayCodeWeightDistribution) {
  const auto& words = golay_codewords();
  ASSERT_EQ(words.size(), 4096u);
  std::map<int, int> weights;
  for (auto w : words) ++weights[std::popcount(w)];
  EXPECT_EQ(weights, (std::map<int, int>{{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}}));
  EXPECT_EQ(golay_generators().size(), 12u);
}

TEST(Lattice, LeechCertificates) {
  const auto k = construct_leech();
  EXPECT_EQ(k->rank(), 24);
  EXPECT_TRUE(k->even());
  EXPECT_TRUE(k->unimodular());
  const auto cert = k->certificates();
  EXPECT_EQ(cert.min_norm, 4);
  EXPECT_EQ(cert.shell_counts.count(2) ? cert.shell_counts.at(2) : 0u, 0u);
  EXPECT_EQ(cert.shell_counts.at(4), 196560u);
  ASSERT_TRUE(k->embedding().has_value());
  EXPECT_EQ(k->embedding()->denominator, 8);
  // Gram entries are ambient dot products over 8.
  const auto& e = *k->embedding();
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j) {
      std::int64_t dot = 0;
      for (int a = 0; a < 24; ++a) dot += e.row(i)[a] * e.row(j)[a];
      ASSERT_EQ(dot % 8, 0);
      EXPECT_EQ(dot / 8, k->gram(i, j));
    }
}

TEST(Lattice, PermutedLeechKeepsShells) {
  const auto k = named_lattice("leech-permuted");
  EXPECT_NE(k->hash(), construct_leech()->hash());
  const auto counts = shell_counts(*k, 4);
  EXPECT_EQ(counts.at(4), 196560u);
  EXPECT_EQ(counts.count(2) ? counts.at(2) : 0u, 0u);
}

TEST(Lattice, ChangeBasisRejectsNonUnimodular) {
  std::vector<std::int64_t> u = {2, 0, 0, 1};
  EXPECT_THROW(change_basis(construct_ii11(), u, "bad"), UsageError);
}

TEST(Lattice, HashIsStableAndGramSensitive) {
  EXPECT_EQ(construct_e8()->hash(), named_lattice("e8")->hash());
  EXPECT_EQ(construct_e8()->hash().size(), 64u);
  EXPECT_NE(construct_e8()->hash(), construct_ii11()->hash());
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Lattice, DescriptorJson) {
  const auto j = descriptor_json(*construct_e8());
  EXPECT_EQ(j["rank"], 8);
  EXPECT_EQ(j["gram"].size(), 8u);
  EXPECT_EQ(j["det"], "1");
  EXPECT_EQ(j["certificates"]["shellCounts"]["2"], 240);
}

TEST(Lattice, NamedLatticeUnknown) { EXPECT_THROW(named_lattice("d4"), UsageError); }
