#include <benchmark/benchmark.h>

#include "lptx/coeff.hpp"
#include "lptx/lp.hpp"
#include "lptx/multiplier.hpp"
#include "lptx/norms.hpp"
#include "lptx/solver.hpp"

namespace {

void BM_transform_roundtrip(benchmark::State& state) {
  auto grid = lptx::make_grid(int(state.range(0)));
  lptx::Field f = lptx::random_field(grid, 7);
  for (auto _ : state) {
    lptx::Field back = lptx::inverse_transform(lptx::forward_transform(f));
    benchmark::DoNotOptimize(back.data().data());
  }
}
BENCHMARK(BM_transform_roundtrip)->Arg(64)->Arg(128)->Arg(256);

void BM_decompose(benchmark::State& state) {
  auto grid = lptx::make_grid(int(state.range(0)));
  lptx::Field f = lptx::random_field(grid, 7);
  for (auto _ : state) {
    auto parts = lptx::decompose(f);
    benchmark::DoNotOptimize(parts.size());
  }
}
BENCHMARK(BM_decompose)->Arg(128)->Arg(256);

void BM_multiplier_apply(benchmark::State& state) {
  auto grid = lptx::make_grid(int(state.range(0)));
  auto m = lptx::make_multiplier(grid, "riesz(1,1)");
  lptx::Field f = lptx::random_field(grid, 7);
  for (auto _ : state) {
    lptx::Field out = lptx::apply(m, f);
    benchmark::DoNotOptimize(out.data().data());
  }
}
BENCHMARK(BM_multiplier_apply)->Arg(128)->Arg(256);

void BM_besov_norm(benchmark::State& state) {
  auto grid = lptx::make_grid(int(state.range(0)));
  lptx::Field f = lptx::random_field(grid, 7);
  for (auto _ : state) benchmark::DoNotOptimize(lptx::besov_norm(f));
}
BENCHMARK(BM_besov_norm)->Arg(128)->Arg(256);

void BM_dyson_term(benchmark::State& state) {
  auto grid = lptx::make_grid(64);
  lptx::TimeGrid tg{64};
  auto cd = lptx::synthesize(lptx::builtin_coeff_spec("default-smooth"), grid, tg);
  auto m = lptx::make_multiplier(grid, "riesz(1,1)");
  auto g = lptx::g_family("constant", 1.0, 7, grid, tg);
  for (auto _ : state) {
    auto j = lptx::dyson_term(cd, m, g, int(state.range(0)));
    benchmark::DoNotOptimize(j.sup_l1());
  }
}
BENCHMARK(BM_dyson_term)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
