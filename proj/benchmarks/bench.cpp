#include "conic/conditions.hpp"
#include "conic/counting.hpp"
#include "conic/elliptic.hpp"
#include "conic/lame.hpp"

#include <benchmark/benchmark.h>

using namespace conic;

namespace
{

void BM_context(benchmark::State &state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(EllipticContext::from_tau(cplx(0.3, 0.8)));
    }
}
BENCHMARK(BM_context);

void BM_wp(benchmark::State &state)
{
    const auto ctx = EllipticContext::from_tau(cplx(0.3, 0.8));
    cplx z(0.21, 0.13);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ctx.wp(z));
        z += cplx(1e-9, 0.0);
    }
}
BENCHMARK(BM_wp);

void BM_zeta(benchmark::State &state)
{
    const auto ctx = EllipticContext::from_tau(cplx(0.3, 0.8));
    cplx z(0.21, 0.13);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ctx.zeta(z));
        z += cplx(1e-9, 0.0);
    }
}
BENCHMARK(BM_zeta);

void BM_find_solutions(benchmark::State &state)
{
    const cplx tau = state.range(0) == 0 ? cplx(0.3, 0.8) : cplx(0.0, 1.0);
    const auto ctx = EllipticContext::from_tau(tau);
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_solutions(ctx));
    }
}
BENCHMARK(BM_find_solutions)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_closure_distance(benchmark::State &state)
{
    const auto a = AngleVector::parse("1/2,1/3,5/7,3/2,11/5,2/9", 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(closure_distance(a));
    }
}
BENCHMARK(BM_closure_distance);

void BM_kostka(benchmark::State &state)
{
    const auto a = AngleVector::parse("2,2,2,2,2,2,2,2,2,2,2,2,2,2", 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kostka_count(a));
    }
}
BENCHMARK(BM_kostka);

}

BENCHMARK_MAIN();
