#include <benchmark/benchmark.h>

#include <kdcoh/coherence.hpp>
#include <kdcoh/kdq.hpp>
#include <kdcoh/qstate.hpp>
#include <kdcoh/rng.hpp>

using namespace kdcoh;

namespace {

void bm_kd_table(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    DensityOperator rho = random_density(d, d, derive_seed(1, d));
    OrthonormalBasis a = random_basis(d, derive_seed(2, d));
    OrthonormalBasis b = random_basis(d, derive_seed(3, d));
    for (auto _ : state) benchmark::DoNotOptimize(kd_distribution(rho, a, b));
}
BENCHMARK(bm_kd_table)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void bm_objective(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    DensityOperator rho = random_density(d, d, derive_seed(4, d));
    OrthonormalBasis a = OrthonormalBasis::computational(d);
    BasisParams p = params_for_basis(random_basis(d, derive_seed(5, d)));
    for (auto _ : state) benchmark::DoNotOptimize(objective_ncl(rho, a, p));
}
BENCHMARK(bm_objective)->Arg(2)->Arg(3)->Arg(4)->Arg(6);

void bm_optimize_qubit(benchmark::State& state) {
    DensityOperator rho = random_density(2, 2, 77);
    OrthonormalBasis a = OrthonormalBasis::computational(2);
    OptimizerConfig cfg;
    cfg.starts = static_cast<int>(state.range(0));
    cfg.seed = 5;
    for (auto _ : state)
        benchmark::DoNotOptimize(optimize_coherence(rho, a, Quantity::ncl, cfg));
}
BENCHMARK(bm_optimize_qubit)->Arg(8)->Arg(32);

void bm_grid_oracle(benchmark::State& state) {
    DensityOperator rho = random_density(2, 2, 78);
    OrthonormalBasis a = OrthonormalBasis::computational(2);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(grid_oracle_qubit(rho, a, Quantity::ncl, n));
}
BENCHMARK(bm_grid_oracle)->Arg(100)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
