// Microbenchmarks pitting the word-parallel relation kernels against the
// serial pair-chasing references they are tested against. Run manually:
//   ./build/bench/uniflab_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "uniflab/oracle.hpp"
#include "uniflab/perm.hpp"
#include "uniflab/quotient.hpp"
#include "uniflab/relation.hpp"

using namespace uniflab;

namespace {

// deterministic sparse relation: the diagonal plus ~3 pairs per point
Relation seeded_relation(int m, std::uint64_t salt) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(m) * 1000003 + salt);
    Relation r = Relation::diagonal(m);
    for (int k = 0; k < 3 * m; ++k) {
        int x = static_cast<int>(rng() % static_cast<std::uint64_t>(m));
        int y = static_cast<int>(rng() % static_cast<std::uint64_t>(m));
        r.set(x, y);
    }
    return r;
}

// two pair blocks, singleton tail: a mid-sized stabilizer at any n >= 4
Partition pair_pair(int n) {
    std::vector<std::vector<int>> blocks = {{0, 1}, {2, 3}};
    for (int x = 4; x < n; ++x) blocks.push_back({x});
    return Partition::from_blocks(n, blocks);
}

void BM_transitive_closure(benchmark::State& state) {
    Relation r = seeded_relation(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        Relation c = transitive_closure(r);
        benchmark::DoNotOptimize(c);
    }
}

void BM_naive_transitive_closure(benchmark::State& state) {
    Relation r = seeded_relation(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        Relation c = oracle::naive_transitive_closure(r);
        benchmark::DoNotOptimize(c);
    }
}

void BM_compose(benchmark::State& state) {
    int m = static_cast<int>(state.range(0));
    Relation r = seeded_relation(m, 1);
    Relation s = seeded_relation(m, 2);
    for (auto _ : state) {
        Relation c = compose(r, s);
        benchmark::DoNotOptimize(c);
    }
}

void BM_image_right(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Subgroup G = Subgroup::symmetric_group(n);
    CosetSpace C = build_cosets(G, Subgroup::point_stabilizer(n, 0));
    Subgroup V = Subgroup::stabilizer_of_partition(pair_pair(n));
    for (auto _ : state) {
        Relation img = image_right(V, C);
        benchmark::DoNotOptimize(img);
    }
}

void BM_naive_image_right(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Subgroup G = Subgroup::symmetric_group(n);
    Subgroup H = Subgroup::point_stabilizer(n, 0);
    Subgroup V = Subgroup::stabilizer_of_partition(pair_pair(n));
    for (auto _ : state) {
        Relation img = oracle::naive_image(Side::Right, V, G, H);
        benchmark::DoNotOptimize(img);
    }
}

} // namespace

// the reference is capped at 200 points; the kernel keeps going
BENCHMARK(BM_naive_transitive_closure)->Arg(32)->Arg(64)->Arg(128)->Arg(200)
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_transitive_closure)->Arg(32)->Arg(64)->Arg(128)->Arg(200)->Arg(512)
    ->Arg(1024)->Arg(2048)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_compose)->Arg(64)->Arg(256)->Arg(1024)->Arg(2048)
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_image_right)->Arg(4)->Arg(5)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_naive_image_right)->Arg(4)->Arg(5)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
