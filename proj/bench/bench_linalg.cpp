// Serial reference kernels against the OpenMP ones on assembled systems.

#include "peri_couple/assembly.hpp"
#include "peri_couple/dense_linalg.hpp"
#include "peri_couple/problems.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace peri_couple;

LinearSystem system_for(int den, int m) {
    GridConfig g;
    g.m = m;
    g.h = 1.0 / (den * m);
    return assemble(build_grid(g), catalog_get("quartic_mixed"), CouplingScheme::of(SchemeKind::mscm));
}

void BM_lu_parallel(benchmark::State& state) {
    const LinearSystem sys = system_for(static_cast<int>(state.range(0)), 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lu_factor(sys.matrix));
    }
    state.counters["N"] = static_cast<double>(sys.matrix.rows());
}

void BM_lu_serial(benchmark::State& state) {
    const LinearSystem sys = system_for(static_cast<int>(state.range(0)), 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::lu_factor(sys.matrix));
    }
    state.counters["N"] = static_cast<double>(sys.matrix.rows());
}

void BM_matvec_parallel(benchmark::State& state) {
    const LinearSystem sys = system_for(static_cast<int>(state.range(0)), 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(multiply(sys.matrix, sys.rhs));
    }
}

void BM_matvec_serial(benchmark::State& state) {
    const LinearSystem sys = system_for(static_cast<int>(state.range(0)), 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::multiply(sys.matrix, sys.rhs));
    }
}

void BM_condition(benchmark::State& state) {
    const LinearSystem sys = system_for(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(condition_number_2(sys.matrix));
    }
}

} // namespace

BENCHMARK(BM_lu_parallel)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lu_serial)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_matvec_parallel)->Arg(16)->Arg(64);
BENCHMARK(BM_matvec_serial)->Arg(16)->Arg(64);
BENCHMARK(BM_condition)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
