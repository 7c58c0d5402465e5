#include <benchmark/benchmark.h>

#include "pspect/cheeger.hpp"
#include "pspect/eigensolver.hpp"
#include "pspect/energy.hpp"
#include "pspect/generators.hpp"
#include "pspect/metrics.hpp"
#include "pspect/numeric.hpp"

using namespace pspect;

namespace {

WeightedGraph bench_graph(int n) {
    auto gen = generate_erdos_renyi(n, 6.0 / n, 17);
    return gen.graph;
}

VertexFunction bench_function(int n) {
    SplitMix64 rng(n);
    VertexFunction f(n);
    for (double& v : f) v = -1.0 + 2.0 * rng.next_double();
    return f;
}

void BM_energy(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    WeightedGraph g = bench_graph(n);
    VertexFunction f = bench_function(n);
    for (auto _ : state) benchmark::DoNotOptimize(energy(g, f, 2.5));
}
BENCHMARK(BM_energy)->Arg(256)->Arg(4096);

void BM_p_laplacian_apply(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    WeightedGraph g = bench_graph(n);
    VertexFunction f = bench_function(n);
    for (auto _ : state) benchmark::DoNotOptimize(p_laplacian_apply(g, f, 1.5));
}
BENCHMARK(BM_p_laplacian_apply)->Arg(256)->Arg(4096);

void BM_exact_isoperimetric(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    WeightedGraph g = bench_graph(n);
    EdgeLength one = constant_length(g, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(exact_isoperimetric(g, one, IsoVariant::H1, {}, n));
}
BENCHMARK(BM_exact_isoperimetric)->Arg(14)->Arg(18)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_sweep_cut(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    WeightedGraph g = bench_graph(n);
    EdgeLength one = constant_length(g, 1.0);
    VertexFunction f = bench_function(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(sweep_cut(g, one, f, IsoVariant::H1));
}
BENCHMARK(BM_sweep_cut)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_linear_oracle_dense(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    WeightedGraph g = bench_graph(n);
    for (auto _ : state) benchmark::DoNotOptimize(linear_oracle(g, OracleVariant::Gap));
}
BENCHMARK(BM_linear_oracle_dense)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_linear_oracle_iterative_tree(benchmark::State& state) {
    auto gen = generate_tree_ball(3, static_cast<int>(state.range(0)),
                                  MeasurePolicy::Normalizing);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            linear_oracle(gen.graph, OracleVariant::Ground, gen.interior, 64));
}
BENCHMARK(BM_linear_oracle_iterative_tree)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_solve_gap(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    WeightedGraph g = bench_graph(n);
    SolverConfig cfg;
    cfg.restarts = 1;
    const double p = state.range(1) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(solve_gap(g, p, cfg));
}
BENCHMARK(BM_solve_gap)->Args({64, 20})->Args({64, 15})->Unit(benchmark::kMillisecond);

void BM_path_closure_row(benchmark::State& state) {
    auto gen = generate_tree_ball(3, 10, MeasurePolicy::Normalizing);
    PseudoMetric pm(gen.graph, constant_length(gen.graph, 1.0));
    for (auto _ : state) {
        PseudoMetric fresh(gen.graph, pm.lengths());
        benchmark::DoNotOptimize(fresh.row(gen.root));
    }
}
BENCHMARK(BM_path_closure_row)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
