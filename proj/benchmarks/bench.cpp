#include <benchmark/benchmark.h>

#include "irlab/dynamics.hpp"
#include "irlab/eigen.hpp"
#include "irlab/rng.hpp"
#include "irlab/spectrum.hpp"

namespace {

irlab::SymMatrix random_symmetric(std::size_t n, std::uint64_t seed) {
  irlab::Rng rng(seed);
  irlab::SymMatrix s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) s.set(i, j, rng.gaussian());
  return s;
}

void BM_jacobi_eigendecompose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const irlab::SymMatrix a = random_symmetric(n, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(irlab::eigendecompose(a));
  }
}
BENCHMARK(BM_jacobi_eigendecompose)->Arg(10)->Arg(20)->Arg(40);

void BM_factor_gd_step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  irlab::SpectrumSpec spec;
  spec.leading = {10.0, 5.0, 1.0};
  spec.n = n;
  const irlab::SynthesizedTarget target = irlab::synthesize(spec);
  irlab::DynamicsConfig cfg;
  cfg.depth = 2;
  cfg.eta = 0.005;
  cfg.alpha = 0.01;
  irlab::FactorChain chain = irlab::FactorChain::identical_init(cfg.depth, n, cfg.alpha);
  for (auto _ : state) {
    chain = irlab::factor_gd_step(chain, target.W, cfg);
    benchmark::DoNotOptimize(chain);
  }
}
BENCHMARK(BM_factor_gd_step)->Arg(20)->Arg(40);

void BM_scalar_simulate(benchmark::State& state) {
  irlab::DynamicsConfig cfg;
  cfg.depth = 2;
  cfg.eta = 0.005;
  cfg.alpha = 0.01;
  cfg.max_iters = static_cast<long>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(irlab::scalar_simulate(1.0, cfg));
  }
}
BENCHMARK(BM_scalar_simulate)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
