#include <benchmark/benchmark.h>

#include <complex>

#include "hzeta/characters.hpp"
#include "hzeta/hybrid.hpp"
#include "hzeta/lfun.hpp"
#include "hzeta/moments.hpp"
#include "hzeta/rational.hpp"
#include "hzeta/rmt.hpp"

namespace {

void bm_hurwitz_eval(benchmark::State& state) {
  const double t = (double)state.range(0);
  const std::complex<double> s(0.5, t);
  for (auto _ : state) {
    auto r = hzeta::hurwitz_zeta(s, hzeta::Rational(1, 3), 1e-10);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(bm_hurwitz_eval)->Arg(100)->Arg(1000)->Arg(8000);

void bm_hurwitz_evaluator(benchmark::State& state) {
  const double t = (double)state.range(0);
  hzeta::HurwitzEvaluator ev(hzeta::Rational(1, 3), 0.5, 2.0 * t);
  double phase = 0.0;
  for (auto _ : state) {
    auto r = ev.eval(t + phase, 1e-8);
    benchmark::DoNotOptimize(r.value);
    phase = phase < 0.5 ? phase + 1e-3 : 0.0;
  }
}
BENCHMARK(bm_hurwitz_evaluator)->Arg(1000)->Arg(8000);

void bm_group_construction(benchmark::State& state) {
  const std::uint64_t q = (std::uint64_t)state.range(0);
  for (auto _ : state) {
    auto g = hzeta::CharacterGroup::make(q);
    benchmark::DoNotOptimize(g->size());
  }
}
BENCHMARK(bm_group_construction)->Arg(12)->Arg(120)->Arg(5040);

void bm_euler_factor(benchmark::State& state) {
  auto g = hzeta::CharacterGroup::make(3);
  hzeta::EulerFactors ef(g->character(1), (double)state.range(0));
  const std::complex<double> s(0.5, 1234.5);
  for (auto _ : state) {
    auto v = ef.p_x(s);
    auto w = ef.p_star_x(s);
    benchmark::DoNotOptimize(v);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(bm_euler_factor)->Arg(12)->Arg(200);

void bm_cue_sample(benchmark::State& state) {
  const int N = (int)state.range(0);
  std::uint64_t index = 0;
  for (auto _ : state) {
    auto s = hzeta::sample_cue(N, 42, index++);
    benchmark::DoNotOptimize(s.angles.data());
  }
}
BENCHMARK(bm_cue_sample)->Arg(10)->Arg(30)->Arg(80);

void bm_mean_square_small(benchmark::State& state) {
  hzeta::QuadratureSpec spec;
  for (auto _ : state) {
    auto est = hzeta::hurwitz_moment(1, hzeta::Rational(1, 3), 50.0, spec, 1);
    benchmark::DoNotOptimize(est.value);
  }
}
BENCHMARK(bm_mean_square_small)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
