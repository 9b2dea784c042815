#include <benchmark/benchmark.h>

#include <random>

#include "lp/family.hpp"
#include "lp/kernel.hpp"
#include "lp/ntv.hpp"
#include "lp/operators.hpp"
#include "lp/randomsets.hpp"
#include "lp/whitney.hpp"

using namespace lp;

namespace {

SampledField bump_field(const Grid& g) {
    return sample_family(default_family(g.dim(), 8, 7), g)[7];
}

void PsiTransform1D(benchmark::State& state) {
    const Grid g = default_grid(1, static_cast<int>(state.range(0)));
    const KernelSpec kernel = default_kernel(1);
    const TLadder ladder = TLadder::for_grid(g, 8);
    const SampledField f = bump_field(g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(psi_transform(kernel, f, ladder));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(PsiTransform1D)->RangeMultiplier(2)->Range(512, 4096)->Complexity();

void PsiTransform2D(benchmark::State& state) {
    const Grid g = default_grid(2, static_cast<int>(state.range(0)));
    const KernelSpec kernel = default_kernel(2);
    const TLadder ladder = TLadder::for_grid(g, 4);
    const SampledField f = bump_field(g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(psi_transform(kernel, f, ladder));
    }
}
BENCHMARK(PsiTransform2D)->Arg(64)->Arg(128);

void SquareFunction1D(benchmark::State& state) {
    const Grid g = default_grid(1, static_cast<int>(state.range(0)));
    const KernelSpec kernel = default_kernel(1);
    const TLadder ladder = TLadder::for_grid(g, 8);
    const UpperHalfField u = psi_transform(kernel, bump_field(g), ladder);
    for (auto _ : state) {
        benchmark::DoNotOptimize(square_function(u, ConeSpec(1.0)));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(SquareFunction1D)->RangeMultiplier(2)->Range(512, 4096)->Complexity();

void GStar1D(benchmark::State& state) {
    const Grid g = default_grid(1, static_cast<int>(state.range(0)));
    const KernelSpec kernel = default_kernel(1);
    const TLadder ladder = TLadder::for_grid(g, 8);
    const UpperHalfField u = psi_transform(kernel, bump_field(g), ladder);
    for (auto _ : state) {
        benchmark::DoNotOptimize(g_star(u, 3.0));
    }
}
BENCHMARK(GStar1D)->Arg(1024)->Arg(2048);

void MaximalFunction1D(benchmark::State& state) {
    const Grid g = default_grid(1, static_cast<int>(state.range(0)));
    const SampledField f = bump_field(g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(maximal_function(f));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(MaximalFunction1D)->RangeMultiplier(2)->Range(512, 4096)->Complexity();

void MaximalFunction2D(benchmark::State& state) {
    const Grid g = default_grid(2, static_cast<int>(state.range(0)));
    const SampledField f = bump_field(g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(maximal_function(f));
    }
}
BENCHMARK(MaximalFunction2D)->Arg(64)->Arg(128);

void WhitneyDecompose(benchmark::State& state) {
    const Grid g = make_grid(1, {0.0}, {1.0}, static_cast<int>(state.range(0)));
    std::mt19937_64 rng(3);
    const RegionMask region = random_interval_union(g, 8, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(whitney_decompose(region));
    }
}
BENCHMARK(WhitneyDecompose)->Arg(1024)->Arg(4096);

void WhitneyVerify2D(benchmark::State& state) {
    const Grid g = make_grid(2, {0.0, 0.0}, {1.0, 1.0}, static_cast<int>(state.range(0)));
    std::mt19937_64 rng(3);
    const RegionMask region = random_rect_union(g, 6, rng);
    const WhitneyCover cover = whitney_decompose(region);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_whitney(cover));
    }
}
BENCHMARK(WhitneyVerify2D)->Arg(64)->Arg(128);

void GoodBadSplit1D(benchmark::State& state) {
    const Grid g = default_grid(1, static_cast<int>(state.range(0)));
    const SampledField f = bump_field(g);
    const double rho = 0.3 * norm(f, Norm::Linf);
    for (auto _ : state) {
        benchmark::DoNotOptimize(good_bad_split(f, rho));
    }
}
BENCHMARK(GoodBadSplit1D)->Arg(2048)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
