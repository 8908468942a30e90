#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "anisolab/geometry.hpp"
#include "anisolab/grid.hpp"
#include "anisolab/harnack.hpp"
#include "anisolab/solver.hpp"

using namespace anisolab;

namespace {

Field square_bump(int n) {
  const std::vector<double> L = {1.0, 1.0};
  const std::vector<int> res = {n, n};
  auto grid = std::make_shared<const Grid>(build_grid(L, res, Boundary::dirichlet_zero));
  return init_field(grid, profiles::Bump{1.0, 0.6});
}

void BM_Advance(benchmark::State& state) {
  Field f = square_bump(static_cast<int>(state.range(0)));
  const ExponentProfile prof = derive_exponents(std::vector<double>{1.4, 1.6}, 2);
  const double eps = f.grid->h_min();
  const double dt = stable_dt(f, prof, eps, 0.5);
  for (auto _ : state) {
    Field next = advance(f, prof, eps, dt);
    benchmark::DoNotOptimize(next.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.values.size()));
}
BENCHMARK(BM_Advance)->Arg(64)->Arg(128)->Arg(256);

void BM_StableDt(benchmark::State& state) {
  const Field f = square_bump(static_cast<int>(state.range(0)));
  const ExponentProfile prof = derive_exponents(std::vector<double>{1.4, 1.6}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(stable_dt(f, prof, f.grid->h_min(), 0.5));
}
BENCHMARK(BM_StableDt)->Arg(64)->Arg(256);

void BM_CubeIntegral(benchmark::State& state) {
  const Field f = square_bump(static_cast<int>(state.range(0)));
  const ExponentProfile prof = derive_exponents(std::vector<double>{1.4, 1.6}, 2);
  const CubeSpec cube = intrinsic_cube(0.3, 0.1, prof);
  for (auto _ : state) benchmark::DoNotOptimize(cube_integral(f, cube, 2.0).value);
}
BENCHMARK(BM_CubeIntegral)->Arg(64)->Arg(256);

void BM_CubeSup(benchmark::State& state) {
  const Field f = square_bump(static_cast<int>(state.range(0)));
  const ExponentProfile prof = derive_exponents(std::vector<double>{1.4, 1.6}, 2);
  const CubeSpec cube = standard_cube(0.3, prof);
  for (auto _ : state) benchmark::DoNotOptimize(cube_sup(f, cube).value);
}
BENCHMARK(BM_CubeSup)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
