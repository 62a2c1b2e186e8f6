#include <benchmark/benchmark.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "vpfp/evolve.hpp"
#include "vpfp/spectral.hpp"

using namespace vpfp;

static void BM_AssembleSymbol(benchmark::State& state) {
  const HermiteBasis basis(int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_B(1.0, 0.05, basis));
  }
}
BENCHMARK(BM_AssembleSymbol)->Arg(48)->Arg(96);

static void BM_DirectSpectrum(benchmark::State& state) {
  const HermiteBasis basis(int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(direct_spectrum(1.0, 0.05, basis));
  }
}
BENCHMARK(BM_DirectSpectrum)->Arg(48)->Arg(96);

static void BM_SolveDispersion(benchmark::State& state) {
  const HermiteBasis basis(int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_dispersion_z(1.0, 0.05, basis));
  }
}
BENCHMARK(BM_SolveDispersion)->Arg(48)->Arg(96);

static void BM_LeadingEigenpair(benchmark::State& state) {
  const HermiteBasis basis(int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(leading_eigenpair(1.0, 0.05, basis));
  }
}
BENCHMARK(BM_LeadingEigenpair)->Arg(48);

static void BM_MatrixExponential(benchmark::State& state) {
  const HermiteBasis basis(int(state.range(0)));
  const SymbolMatrix b = assemble_B(1.0, 0.1, basis);
  for (auto _ : state) {
    const Eigen::MatrixXcd prop = (0.5 * b.entries).exp();
    benchmark::DoNotOptimize(prop);
  }
}
BENCHMARK(BM_MatrixExponential)->Arg(48)->Arg(96);

static void BM_EvolveModeCached(benchmark::State& state) {
  const HermiteBasis basis(48);
  const LinearModeEvolver evolver(1.0, 0.1, basis);
  VelocityCoeffs f = basis.unit(0) + basis.unit(2);
  benchmark::DoNotOptimize(evolver.evolve(f, 0.25));  // warm the cache
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolver.evolve(f, 0.25));
  }
}
BENCHMARK(BM_EvolveModeCached);

BENCHMARK_MAIN();
