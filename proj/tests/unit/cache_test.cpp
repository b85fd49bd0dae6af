#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "leechps/cache.hpp"
#include "leechps/enumerate.hpp"
#include "leechps/fourier.hpp"
#include "leechps/lattice.hpp"

using namespace leechps;
namespace fs = std::filesystem;

namespace {

class CacheDir : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("leechps-cache-test-" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

std::vector<lattice::Coords> e8_shell(std::int64_t nrm) {
  const auto e8 = lattice::construct_e8();
  std::vector<lattice::Coords> out;
  for (auto& x : lattice::short_vectors(*e8, std::vector<double>(8, 0.0), static_cast<double>(nrm)))
    if (lattice::norm(*e8, x) == nrm) out.push_back(x);
  return out;
}

std::vector<fs::path> files_in(const fs::path& d) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(d)) out.push_back(e.path());
  return out;
}

}  // namespace

TEST_F(CacheDir, ShellRoundTrip) {
  const auto e8 = lattice::construct_e8();
  const auto shell = e8_shell(4);
  ASSERT_EQ(shell.size(), 2160u);
  {
    cache::Store st(dir_);
    EXPECT_FALSE(st.load_shell(*e8, 4).has_value());
    st.save_shell(*e8, 4, shell);
  }
  cache::Store st(dir_);
  const auto back = st.load_shell(*e8, 4);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(*back, shell);
  EXPECT_FALSE(st.load_shell(*lattice::construct_ii11(), 4).has_value());
  const auto reports = st.verify();
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_TRUE(reports[0].ok);
  EXPECT_EQ(reports[0].records, 2160u);
}

TEST_F(CacheDir, TamperedPayloadIsRejected) {
  const auto e8 = lattice::construct_e8();
  {
    cache::Store st(dir_);
    st.save_shell(*e8, 2, e8_shell(2));
  }
  const auto files = files_in(dir_);
  ASSERT_EQ(files.size(), 1u);
  std::stringstream buf;
  buf << std::ifstream(files[0]).rdbuf();
  std::string text = buf.str();
  const auto pos = text.rfind("1");
  ASSERT_NE(pos, std::string::npos);
  text[pos] = '3';
  std::ofstream(files[0], std::ios::trunc) << text;

  cache::Store st(dir_);
  EXPECT_FALSE(st.load_shell(*e8, 2).has_value());
  EXPECT_EQ(st.rejected().size(), 1u);
  const auto reports = st.verify();
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_FALSE(reports[0].ok);
}

TEST_F(CacheDir, CoefficientsAreBitIdentical) {
  const analytic::SliceParams p(1.0, 0.5);
  TruncationPolicy pol;
  pol.n_max = 3;
  const auto fresh = analytic::fourier_coeff_invariants(24, 3, lattice::Content{1}, p, Complex(30.0, 0.5), pol);
  const analytic::CoeffKey key{"abc", 1.0, 0.5, Complex(30.0, 0.5), 3, 3, 1};
  {
    cache::Store st(dir_);
    EXPECT_FALSE(st.find(key).has_value());
    st.insert(key, fresh);
  }
  cache::Store st(dir_);
  const auto got = st.find(key);
  ASSERT_TRUE(got.has_value());
  EXPECT_EQ(std::memcmp(&got->a, &fresh.a, sizeof(Complex)), 0);
  EXPECT_EQ(std::memcmp(&got->a_first, &fresh.a_first, sizeof(Complex)), 0);
  EXPECT_EQ(std::memcmp(&got->a_star, &fresh.a_star, sizeof(Complex)), 0);
  EXPECT_EQ(got->tail_bound, fresh.tail_bound);
  EXPECT_EQ(st.hits(), 1u);
  auto other = key;
  other.n_max = 4;
  EXPECT_FALSE(st.find(other).has_value());
  other = key;
  other.content = 2;
  EXPECT_FALSE(st.find(other).has_value());
}

TEST_F(CacheDir, FourierEvaluationReusesCoefficients) {
  const auto leech = lattice::construct_leech();
  const analytic::SliceParams p(1.0, 0.5);
  TruncationPolicy pol;
  pol.n_max = 2;
  const std::vector<double> v(24, 0.05);
  Complex first;
  {
    cache::Store st(dir_);
    analytic::FourierOptions o;
    o.store = &st;
    first = analytic::fourier_poincare(*leech, v, p, Complex(30.0, 0.0), pol, Budget{}, o).value;
  }
  cache::Store st(dir_);
  analytic::FourierOptions o;
  o.store = &st;
  const auto again = analytic::fourier_poincare(*leech, v, p, Complex(30.0, 0.0), pol, Budget{}, o);
  EXPECT_EQ(again.value, first);
  EXPECT_GT(again.extra["cacheHits"].get<std::uint64_t>(), 0u);
  EXPECT_EQ(again.extra["cacheHits"], again.extra["headClasses"]);
}

TEST_F(CacheDir, ClearRemovesOnlyCacheFiles) {
  const auto e8 = lattice::construct_e8();
  std::ofstream(dir_ / "notes.txt") << "keep";
  {
    cache::Store st(dir_);
    st.save_shell(*e8, 2, e8_shell(2));
  }
  cache::Store st(dir_);
  EXPECT_EQ(st.list().size(), 1u);
  EXPECT_EQ(st.clear(), 1u);
  EXPECT_TRUE(st.list().empty());
  EXPECT_TRUE(fs::exists(dir_ / "notes.txt"));
}
