#include <benchmark/benchmark.h>

#include "rpt/certify.hpp"
#include "rpt/generators.hpp"
#include "rpt/hamilton.hpp"
#include "rpt/partition.hpp"

using namespace rpt;

namespace {

Graph planted_pair(uint64_t seed) {
    PlantedSpec spec;
    spec.class_sizes = {20, 20};
    spec.bridge = 3;
    spec.seed = seed;
    return gen_planted(spec).graph;
}

void BM_robust_neighbourhood(benchmark::State& state) {
    Graph g = planted_pair(1);
    VertexSet host = VertexSet::full(40);
    VertexSet s(40);
    for (int v = 0; v < 20; ++v) s.add(v);
    for (auto _ : state) benchmark::DoNotOptimize(robust_neighbourhood(g, host, s, Rat(1, 20)));
}
BENCHMARK(BM_robust_neighbourhood);

void BM_certify_exact(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Graph g = gen_random_regular(n, n / 2, 3);
    VertexSet host = VertexSet::full(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(certify_robust_expander(g, host, Rat(1, 10), Rat(1, 4), CertifyMode::Exact));
    state.SetComplexityN(n);
}
BENCHMARK(BM_certify_exact)->Arg(14)->Arg(16)->Arg(18)->Arg(20);

void BM_witness_search_heuristic(benchmark::State& state) {
    Graph g = planted_pair(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(find_nonexpanding_witness(g, VertexSet::full(40), Rat(1, 20), Rat(1, 5)));
}
BENCHMARK(BM_witness_search_heuristic);

void BM_vertex_connectivity(benchmark::State& state) {
    Graph g = planted_pair(3);
    for (auto _ : state) benchmark::DoNotOptimize(vertex_connectivity(g));
}
BENCHMARK(BM_vertex_connectivity);

void BM_refine_planted_pair(benchmark::State& state) {
    Graph g = planted_pair(4);
    for (auto _ : state) benchmark::DoNotOptimize(refine_to_robust_partition(g));
}
BENCHMARK(BM_refine_planted_pair);

void BM_hamilton_oracle_k16(benchmark::State& state) {
    Graph g = gen_random_regular(16, 9, 5);
    for (auto _ : state) benchmark::DoNotOptimize(hamilton_oracle(g, VertexSet::full(16)));
}
BENCHMARK(BM_hamilton_oracle_k16);

void BM_oracle_nonhamiltonian_fig1i(benchmark::State& state) {
    Graph g = gen_fig1i(4);
    for (auto _ : state) benchmark::DoNotOptimize(hamilton_oracle(g, VertexSet::full(17)));
}
BENCHMARK(BM_oracle_nonhamiltonian_fig1i);

}  // namespace

BENCHMARK_MAIN();
