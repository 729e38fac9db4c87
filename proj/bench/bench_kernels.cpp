#include "jigsaw/kernels.hpp"
#include "jigsaw/special_hunt.hpp"
#include "jigsaw/tiling.hpp"

#include <benchmark/benchmark.h>

using namespace jigsaw;

namespace {

const JigsawGroup& w5()
{
    static const JigsawGroup g = weierstrass_group(TileType(5));
    return g;
}

const JigsawGroup& j22()
{
    static const JigsawGroup g = fan_jigsaw_group(2, 2);
    return g;
}

void special_serial(benchmark::State& s)
{
    for (auto _ : s) benchmark::DoNotOptimize(kernels::special_scan_serial(w5().generators, s.range(0)));
}

void special_parallel(benchmark::State& s)
{
    for (auto _ : s) benchmark::DoNotOptimize(kernels::special_scan_parallel(w5().generators, s.range(0)));
}

void cusp_serial(benchmark::State& s)
{
    for (auto _ : s)
        benchmark::DoNotOptimize(kernels::cusp_scan_serial(j22().generators, j22().fundamental_length, s.range(0)));
}

void cusp_parallel(benchmark::State& s)
{
    for (auto _ : s)
        benchmark::DoNotOptimize(kernels::cusp_scan_parallel(j22().generators, j22().fundamental_length, s.range(0)));
}

struct WalkSetup {
    JigsawGroup g = weierstrass_group(TileType(9));
    std::vector<Rational> vertices;
    std::vector<Rational> candidates;

    WalkSetup()
    {
        for (std::size_t i = 1; i < g.jigsaw.vertices.size(); ++i) vertices.push_back(g.jigsaw.vertices[i].value());
        candidates = candidates_by_height(Rational(0), Rational(g.fundamental_length), 12);
    }
};

const WalkSetup& walks()
{
    static const WalkSetup w;
    return w;
}

void cycle_serial(benchmark::State& s)
{
    const auto& w = walks();
    for (auto _ : s)
        benchmark::DoNotOptimize(
            kernels::first_cycle_serial(w.g.generators, w.vertices, w.g.fundamental_length, w.candidates, 2000, 256));
}

void cycle_parallel(benchmark::State& s)
{
    const auto& w = walks();
    for (auto _ : s)
        benchmark::DoNotOptimize(kernels::first_cycle_parallel(w.g.generators, w.vertices, w.g.fundamental_length,
                                                               w.candidates, 2000, 256));
}

}  // namespace

BENCHMARK(special_serial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(special_parallel)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(cusp_serial)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(cusp_parallel)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(cycle_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(cycle_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
