#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "gv/generate.hpp"
#include "gv/linops.hpp"
#include "gv/solver.hpp"

namespace {

gv::VertexFunction noise(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    gv::VertexFunction u(n);
    for (std::size_t i = 0; i < n; ++i)
        u[i] = d(rng);
    return u;
}

void BM_Laplacian(benchmark::State& state)
{
    const auto side = static_cast<std::size_t>(state.range(0));
    const gv::WeightedGraph g = gv::make_torus(side, side, {true, true, 1});
    const gv::VertexFunction u = noise(g.vertex_count(), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(gv::mu_laplacian(g, u));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.vertex_count()));
}
BENCHMARK(BM_Laplacian)->Arg(8)->Arg(32)->Arg(128);

// Factorization is paid once; this measures repeated solves, which is what
// the monotone iteration does. Sides 16 and 32 use the dense path, 64 the
// iterative one.
void BM_ShiftedSolve(benchmark::State& state)
{
    const auto side = static_cast<std::size_t>(state.range(0));
    const gv::WeightedGraph g = gv::make_torus(side, side);
    const gv::ShiftedSystem sys(g, 11.0);
    const gv::VertexFunction rhs = noise(g.vertex_count(), 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(sys.solve(rhs));
}
BENCHMARK(BM_ShiftedSolve)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_IterateSystem(benchmark::State& state)
{
    const auto side = static_cast<std::size_t>(state.range(0));
    const gv::WeightedGraph g = gv::make_torus(side, side);
    const std::string far = std::to_string(side / 2) + "_" + std::to_string(side / 2);
    const gv::VortexSet vm(g, std::vector<std::pair<std::string, double>>{{"0_0", 1.0}});
    const gv::VortexSet vn(g, std::vector<std::pair<std::string, double>>{{far, 1.0}});
    const gv::BackgroundPair bg = gv::background_pair(g, vm, vn);
    const gv::ModelParams p(1, 2, 1e4);
    for (auto _ : state)
        benchmark::DoNotOptimize(gv::iterate_system(g, p, bg, vm, vn));
}
BENCHMARK(BM_IterateSystem)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
