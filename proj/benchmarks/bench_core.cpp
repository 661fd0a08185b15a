#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "bpb/attainment.hpp"
#include "bpb/modulus.hpp"
#include "bpb/space.hpp"
#include "bpb/squareness.hpp"

using namespace bpb;

namespace {

std::vector<Vec> random_points(int n, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vec> pts(count, Vec(n));
    for (Vec& p : pts)
        for (double& c : p) c = gauss(rng);
    return pts;
}

void BM_NormDiamond(benchmark::State& state) {
    NormedSpace D = NormedSpace::make_diamond(0.5);
    auto pts = random_points(3, 256, 1u);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(D.norm(pts[i++ % pts.size()]));
    }
}
BENCHMARK(BM_NormDiamond);

void BM_DualNormDiamond(benchmark::State& state) {
    NormedSpace D = NormedSpace::make_diamond(0.5);
    auto pts = random_points(3, 256, 2u);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(D.dual_norm(pts[i++ % pts.size()]));
    }
}
BENCHMARK(BM_DualNormDiamond);

void BM_SupportFunctional(benchmark::State& state) {
    NormedSpace D = NormedSpace::make_diamond(0.5);
    auto pts = random_points(3, 256, 3u);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(D.support_functional(pts[i++ % pts.size()]));
    }
}
BENCHMARK(BM_SupportFunctional);

void BM_DistToPi(benchmark::State& state) {
    NormedSpace S = state.range(0) == 0 ? NormedSpace::catalog("linf2")
                                        : NormedSpace::make_diamond(0.5);
    const int n = S.dim();
    auto xs = random_points(n, 128, 4u);
    auto fs = random_points(n, 128, 5u);
    for (Vec& x : xs) x = scale(x, 1.0 / S.norm(x));
    for (Vec& f : fs) f = scale(f, 1.0 / S.dual_norm(f));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dist_to_pi(S, xs[i % xs.size()], fs[i % fs.size()]).distance);
        ++i;
    }
}
BENCHMARK(BM_DistToPi)->Arg(0)->Arg(1);

void BM_DistToPiEuclidean(benchmark::State& state) {
    auto xs = random_points(2, 128, 6u);
    auto fs = random_points(2, 128, 7u);
    for (Vec& x : xs) x = scale(x, 1.0 / norm2(x));
    for (Vec& f : fs) f = scale(f, 1.0 / norm2(f));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dist_to_pi_euclidean(xs[i % xs.size()], fs[i % fs.size()]).distance);
        ++i;
    }
}
BENCHMARK(BM_DistToPiEuclidean);

void BM_HullFacetsDiamond(benchmark::State& state) {
    auto verts = diamond_vertices(0.5);
    for (auto _ : state) {
        SymmetricPolytope P(verts);
        benchmark::DoNotOptimize(hull_facets(P));
    }
}
BENCHMARK(BM_HullFacetsDiamond);

void BM_GeometryBuildDiamond(benchmark::State& state) {
    auto verts = diamond_vertices(0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(PolytopeGeometry::build(SymmetricPolytope(verts)));
    }
}
BENCHMARK(BM_GeometryBuildDiamond);

void BM_PhiLowerLinf2(benchmark::State& state) {
    NormedSpace S = NormedSpace::catalog("linf2");
    SearchBudget b;
    b.starts = 16;
    for (auto _ : state) {
        benchmark::DoNotOptimize(phi_lower(S, 0.5, false, b).lower);
    }
}
BENCHMARK(BM_PhiLowerLinf2);

void BM_PhiUpperCertifiedLinf2(benchmark::State& state) {
    NormedSpace S = NormedSpace::catalog("linf2");
    SearchBudget b;
    b.stop_below = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(phi_upper_certified(S, 0.5, false, 0.02, b).upper);
    }
}
BENCHMARK(BM_PhiUpperCertifiedLinf2);

void BM_SquarenessDefectDiamond(benchmark::State& state) {
    NormedSpace D = NormedSpace::make_diamond(0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(squareness_defect(D).defect);
    }
}
BENCHMARK(BM_SquarenessDefectDiamond);

}  // namespace

BENCHMARK_MAIN();
