#include <benchmark/benchmark.h>

#include <cmath>

#include "resvar/resvar.hpp"

using namespace resvar;

namespace {

void BM_Integrate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate([](double x) { return std::exp(-x) * std::log1p(x); }, 0.0, kInf));
  }
}
BENCHMARK(BM_Integrate);

void BM_ResidualInformation(benchmark::State& state, const char* spec) {
  const Distribution d = make_distribution(parse_family(spec));
  for (auto _ : state) benchmark::DoNotOptimize(residual_information(d, 0.5));
}
BENCHMARK_CAPTURE(BM_ResidualInformation, weibull, "weibull(lambda=1,k=1.5)");
BENCHMARK_CAPTURE(BM_ResidualInformation, gamma, "gamma(r=2,theta=0.5)");
BENCHMARK_CAPTURE(BM_ResidualInformation, lognormal, "lognormal(mu=-0.5,sigma=1)");

void BM_PhmResidual(benchmark::State& state) {
  const PHModel m = series_system(static_cast<int>(state.range(0)),
                                  make_distribution(GeneralizedExponential{1.0, 2.0}));
  for (auto _ : state) benchmark::DoNotOptimize(phm_residual_information(m, 1.0));
}
BENCHMARK(BM_PhmResidual)->Arg(1)->Arg(4);

void BM_CPBound(benchmark::State& state) {
  const Distribution d = make_distribution(Weibull{1.0, 2.0});
  for (auto _ : state) benchmark::DoNotOptimize(cp_lower_bound(d, 0.5));
}
BENCHMARK(BM_CPBound);

void BM_OUCurve(benchmark::State& state) {
  const OUFPTParams p{1.0, 1.0, 1.0, 0.35};
  const std::vector<double> ages = linear_grid(0.5, 5.0, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ou_fpt_residual_measures(p, ages, {}, static_cast<int>(state.range(0)), false));
  }
}
BENCHMARK(BM_OUCurve)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
