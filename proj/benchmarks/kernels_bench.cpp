#include <benchmark/benchmark.h>

#include <vector>

#include "leechps/enumerate.hpp"
#include "leechps/exp_sums.hpp"
#include "leechps/fourier.hpp"
#include "leechps/lattice.hpp"
#include "leechps/special.hpp"

using namespace leechps;

static void BM_LeechShellEnumeration(benchmark::State& state) {
  const auto leech = lattice::construct_leech();
  const std::vector<double> zero(24, 0.0);
  lattice::ShortVectorEnumerator en(*leech);
  for (auto _ : state) {
    std::uint64_t count = en.visit(zero, 4.0, Budget{}, [](auto, auto, auto) {});
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_LeechShellEnumeration)->Unit(benchmark::kMillisecond);

static void BM_Kloosterman(benchmark::State& state) {
  const auto n = state.range(0);
  std::int64_t a = 1;
  for (auto _ : state) {
    expsums::clear_kloosterman_cache();
    benchmark::DoNotOptimize(expsums::kloosterman(a++, 7, n).value);
  }
}
BENCHMARK(BM_Kloosterman)->Arg(97)->Arg(4999);

static void BM_BesselK(benchmark::State& state) {
  const Complex nu(-18.0, 4.0);
  double x = 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analytic::bessel_k(nu, x));
    x = x < 30.0 ? x + 0.25 : 3.0;
  }
}
BENCHMARK(BM_BesselK);

static void BM_CosetWalkE8(benchmark::State& state) {
  const auto e8 = lattice::construct_e8();
  const lattice::Coords lam = {1, 0, -1, 2, 0, 1, 1, 0};
  for (auto _ : state)
    benchmark::DoNotOptimize(expsums::j_brute(*e8, lam, state.range(0), 1, Budget{}).value);
}
BENCHMARK(BM_CosetWalkE8)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_LeechTheta(benchmark::State& state) {
  const auto leech = lattice::construct_leech();
  std::vector<double> v(24);
  for (int i = 0; i < 24; ++i) v[i] = 0.01 * ((i * 7) % 13) - 0.06;
  for (auto _ : state) benchmark::DoNotOptimize(analytic::leech_theta(*leech, v, 0.7));
}
BENCHMARK(BM_LeechTheta)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
