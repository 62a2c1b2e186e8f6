#include <benchmark/benchmark.h>

#include <numbers>

#include "vpfp/ddp.hpp"
#include "vpfp/vpfp.hpp"

using namespace vpfp;

namespace {
const double kBox = 2.0 * std::numbers::pi;
}

static void BM_KineticStep(benchmark::State& state) {
  const int j_max = int(state.range(0));
  const HermiteBasis basis(16);
  FourierWorkspace ws(j_max);
  const double eps = 0.1;
  KineticField f = make_initial_field(basis, j_max, kBox, 1e-2, Prepared::Ill);
  const double dt = default_dt(f, eps);
  for (auto _ : state) {
    f = step(f, dt, eps, ws);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_KineticStep)->Arg(16)->Arg(32);

static void BM_DdpStep(benchmark::State& state) {
  const int j_max = int(state.range(0));
  FourierWorkspace ws(j_max);
  DensityField n(j_max, kBox);
  n.mode(1) = 5e-3;
  n.mode(-1) = 5e-3;
  for (auto _ : state) {
    n = step_ddp(n, 1e-3, ws);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_DdpStep)->Arg(16)->Arg(32);

static void BM_NonlinearCoupling(benchmark::State& state) {
  const int j_max = int(state.range(0));
  const HermiteBasis basis(16);
  FourierWorkspace ws(j_max);
  const KineticField f =
      make_initial_field(basis, j_max, kBox, 1e-2, Prepared::Ill);
  const PoissonField phi = poisson_solve(f);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nonlinear_G(f, phi, ws));
  }
}
BENCHMARK(BM_NonlinearCoupling)->Arg(16)->Arg(32);

static void BM_EnergyMonitor(benchmark::State& state) {
  const HermiteBasis basis(16);
  const KineticField f =
      make_initial_field(basis, 32, kBox, 1e-2, Prepared::Ill);
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy_monitor(f, 0.1, 2));
  }
}
BENCHMARK(BM_EnergyMonitor);

BENCHMARK_MAIN();
