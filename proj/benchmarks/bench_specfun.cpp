#include <benchmark/benchmark.h>

#include <cmath>

#include "calabi/calabi_ode.hpp"
#include "calabi/poisson.hpp"
#include "calabi/quadrature.hpp"
#include "calabi/specfun.hpp"

namespace sf = calabi::specfun;
namespace ode = calabi::ode;
namespace poi = calabi::poisson;

static void BM_BesselISeries(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::bessel_i(1.0 / 3.0, 12.5, sf::BesselPath::series));
  }
}
BENCHMARK(BM_BesselISeries);

static void BM_BesselKIntegral(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::bessel_k(1.0 / 3.0, 12.5, sf::BesselPath::integral));
  }
}
BENCHMARK(BM_BesselKIntegral);

static void BM_KummerMNegative(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::log_kummer_m(-2.5, 0.5, -40.0));
  }
}
BENCHMARK(BM_KummerMNegative);

static void BM_TricomiU(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::log_tricomi_u(3.0, 0.5, 9.0));
  }
}
BENCHMARK(BM_TricomiU);

static void BM_GaussKronrod(benchmark::State& state) {
  for (auto _ : state) {
    auto r = calabi::quad::integrate_finite([](double t) { return std::exp(-t * t); }, -6.0,
                                            6.0, 1e-10);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_GaussKronrod);

static void BM_FundamentalPairEval(benchmark::State& state) {
  const auto fp = ode::fundamental_pair(ode::Mode{1, 1, 2.5}, 2);
  double z = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fp.D(z).log_abs);
    z = z < 8.0 ? z + 0.1 : 1.0;
  }
}
BENCHMARK(BM_FundamentalPairEval);

static void BM_SolveModeConstruct(benchmark::State& state) {
  poi::ModeCoefficient c;
  c.mode_index = 1;
  c.payload = poi::RhsSpec{poi::RhsFamily::exp_half_power, 1.0, 1.0};
  for (auto _ : state) {
    auto u = poi::solve_mode(ode::Mode{1, 1, 0.5}, 2, c, 1.0, 4.0);
    benchmark::DoNotOptimize(u(2.0));
  }
}
BENCHMARK(BM_SolveModeConstruct);

BENCHMARK_MAIN();
