#include <benchmark/benchmark.h>

#include "orbit_integra/binomial_galois.hpp"
#include "orbit_integra/harness.hpp"
#include "orbit_integra/padic_geometry.hpp"
#include "orbit_integra/radical_points.hpp"

using namespace orbit_integra;

namespace {

void BM_factor_binomial(benchmark::State& state)
{
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const Rational betas[] = {Rational(16), Rational(-4), Rational(-324), Rational(81, 16), Rational(3)};
    for (auto _ : state)
        for (const Rational& beta : betas) benchmark::DoNotOptimize(factor_binomial(n, beta));
}
BENCHMARK(BM_factor_binomial)->Arg(8)->Arg(16)->Arg(64);

void BM_distance_profile(benchmark::State& state)
{
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(distance_profile(Rational(33), Rational(1), n, Integer(2)));
}
BENCHMARK(BM_distance_profile)->Arg(8)->Arg(256)->Arg(4096);

void BM_embed_level(benchmark::State& state)
{
    const OrbitLevel level = preimages(Rational(2), 2, static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(embed_level(level, kDefaultPrecision));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * level.size()));
}
BENCHMARK(BM_embed_level)->Arg(6)->Arg(10)->Arg(14);

void BM_census(benchmark::State& state)
{
    const std::vector<Place> S{Place::infinity(), Place::finite(7)};
    const auto depth = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(s_integral_census(Rational(3), Rational(2), 2, S, depth, {}));
}
BENCHMARK(BM_census)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
