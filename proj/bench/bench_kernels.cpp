// Parallel/indexed kernels vs their serial brute-force counterparts.
// Build with -DCMAKE_BUILD_TYPE=Release and run ./bench/tsig_bench.

#include <benchmark/benchmark.h>

#include "textsignal/cascade/cascade.hpp"
#include "textsignal/core/points.hpp"
#include "textsignal/gateway/mock_backend.hpp"
#include "textsignal/manifold/neighbor_index.hpp"
#include "textsignal/partition/density_core.hpp"
#include "textsignal/partition/kmeans.hpp"
#include "textsignal/reference/serial.hpp"
#include "textsignal/util/hash.hpp"

using namespace tsig;

namespace {

PointMatrix random_points(std::size_t n, std::size_t dim, std::uint64_t seed) {
    util::SplitMix64 rng(seed);
    PointMatrix pts(n, dim);
    for (auto& v : pts.data) v = rng.next_uniform(-10.0, 10.0);
    return pts;
}

void BM_KnnIndexed2D(benchmark::State& state) {
    auto pts = random_points(static_cast<std::size_t>(state.range(0)), 2, 1);
    auto index = manifold::NeighborIndex::build(pts);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(index.knn_member(i % pts.n, 8));
        ++i;
    }
}
BENCHMARK(BM_KnnIndexed2D)->Arg(10000)->Arg(50000);

void BM_KnnBrute2D(benchmark::State& state) {
    auto pts = random_points(static_cast<std::size_t>(state.range(0)), 2, 1);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ref::brute_knn(pts, pts.row(i % pts.n), 8, i % pts.n));
        ++i;
    }
}
BENCHMARK(BM_KnnBrute2D)->Arg(10000)->Arg(50000);

void BM_KnnIndexed5D(benchmark::State& state) {
    auto pts = random_points(static_cast<std::size_t>(state.range(0)), 5, 2);
    auto index = manifold::NeighborIndex::build(pts);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(index.knn_member(i % pts.n, 8));
        ++i;
    }
}
BENCHMARK(BM_KnnIndexed5D)->Arg(10000)->Arg(50000);

void BM_KnnBrute5D(benchmark::State& state) {
    auto pts = random_points(static_cast<std::size_t>(state.range(0)), 5, 2);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ref::brute_knn(pts, pts.row(i % pts.n), 8, i % pts.n));
        ++i;
    }
}
BENCHMARK(BM_KnnBrute5D)->Arg(10000)->Arg(50000);

void BM_EpsGraphIndexed(benchmark::State& state) {
    auto pts = random_points(static_cast<std::size_t>(state.range(0)), 2, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cascade::eps_graph_components(pts, 0.4));
    }
}
BENCHMARK(BM_EpsGraphIndexed)->Arg(2000)->Arg(10000);

void BM_EpsGraphBfs(benchmark::State& state) {
    auto pts = random_points(static_cast<std::size_t>(state.range(0)), 2, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ref::bfs_components(pts, 0.4));
    }
}
BENCHMARK(BM_EpsGraphBfs)->Arg(2000)->Arg(10000);

void BM_AssignParallel(benchmark::State& state) {
    auto pts = random_points(static_cast<std::size_t>(state.range(0)), 5, 4);
    auto centroids = random_points(15, 5, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(partition::nearest_centroids(centroids, pts));
    }
}
BENCHMARK(BM_AssignParallel)->Arg(50000)->Arg(200000);

void BM_AssignSerial(benchmark::State& state) {
    auto pts = random_points(static_cast<std::size_t>(state.range(0)), 5, 4);
    auto centroids = random_points(15, 5, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ref::nearest_centroids(centroids, pts));
    }
}
BENCHMARK(BM_AssignSerial)->Arg(50000)->Arg(200000);

void BM_DensityIndexed(benchmark::State& state) {
    auto pts = random_points(static_cast<std::size_t>(state.range(0)), 2, 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(partition::density_core_flags(pts, 0.4, 8));
    }
}
BENCHMARK(BM_DensityIndexed)->Arg(2000)->Arg(10000);

void BM_DensityBrute(benchmark::State& state) {
    auto pts = random_points(static_cast<std::size_t>(state.range(0)), 2, 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ref::dbscan_members(pts, 0.4, 8));
    }
}
BENCHMARK(BM_DensityBrute)->Arg(2000)->Arg(10000);

void BM_MockEmbedBatch(benchmark::State& state) {
    gateway::BackendConfig cfg;
    cfg.seed = 7;
    cfg.mock_dim = 64;
    gateway::MockBackend mock(cfg);
    std::vector<DocumentRecord> docs;
    for (int i = 0; i < 1000; ++i) {
        DocumentRecord d;
        d.doc_id = "doc-" + std::to_string(i);
        d.title = "benchmark title " + std::to_string(i);
        d.description = "a moderately sized body of text for embedding throughput measurement";
        docs.push_back(std::move(d));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(mock.embed_batch(docs));
    }
}
BENCHMARK(BM_MockEmbedBatch);

}  // namespace

BENCHMARK_MAIN();
