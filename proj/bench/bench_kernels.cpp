// Serial reference kernels vs their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "polarwell/eigensolver.hpp"
#include "polarwell/polar_model.hpp"
#include "polarwell/reference_kernels.hpp"

namespace es = polarwell::eigensolver;
namespace ref = polarwell::reference;
using polarwell::polar::polar_potential;

namespace {

void BM_DiscretizeParallel(benchmark::State& state) {
  const auto grid = es::Grid::from_cells(static_cast<int>(state.range(0)));
  const auto pot = polar_potential(0);
  for (auto _ : state) benchmark::DoNotOptimize(es::discretize(pot, grid, es::EndpointTreatment::automatic));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DiscretizeSerial(benchmark::State& state) {
  const auto grid = es::Grid::from_cells(static_cast<int>(state.range(0)));
  const auto pot = polar_potential(0);
  for (auto _ : state) benchmark::DoNotOptimize(ref::discretize(pot, grid, es::EndpointTreatment::automatic));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EigenvaluesParallel(benchmark::State& state) {
  const auto op = es::discretize(polar_potential(5), es::Grid::from_cells(static_cast<int>(state.range(0))));
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(es::lowest_eigenvalues(op, k, es::kPolarBisectionTol));
}

void BM_EigenvaluesSerial(benchmark::State& state) {
  const auto op = es::discretize(polar_potential(5), es::Grid::from_cells(static_cast<int>(state.range(0))));
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ref::lowest_eigenvalues(op, k, es::kPolarBisectionTol));
}

void BM_SolvePolar(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(es::solve_polar(2, 3, static_cast<int>(state.range(0)), true));
}

}  // namespace

BENCHMARK(BM_DiscretizeParallel)->Arg(4000)->Arg(16000)->Arg(128000);
BENCHMARK(BM_DiscretizeSerial)->Arg(4000)->Arg(16000)->Arg(128000);
BENCHMARK(BM_EigenvaluesParallel)->Args({4000, 8})->Args({4000, 64})->Args({16000, 8})->Args({16000, 64});
BENCHMARK(BM_EigenvaluesSerial)->Args({4000, 8})->Args({4000, 64})->Args({16000, 8})->Args({16000, 64});
BENCHMARK(BM_SolvePolar)->Arg(4000)->Arg(16000);

BENCHMARK_MAIN();
