#include <sdpoly/closed_form.hpp>
#include <sdpoly/oracle.hpp>
#include <sdpoly/qseries.hpp>

#include <benchmark/benchmark.h>

#include <omp.h>

using namespace sdpoly;

namespace
{

// Two dense operands with symbolic w, as the closed form produces them.
std::pair<QSeries, QSeries> operands(int order)
{
    const WPoly w = WPoly::w();
    return {closed_form::tilde(closed_form::Tilde::beta, order, w), closed_form::tilde(closed_form::Tilde::eta, order, w)};
}

void BM_CauchySerial(benchmark::State &state)
{
    const auto [a, b] = operands(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernel::cauchy_serial(a.coeffs(), b.coeffs(), a.coeffs().size(), a.wcap()));
}

void BM_CauchyParallel(benchmark::State &state)
{
    const auto [a, b] = operands(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernel::cauchy_parallel(a.coeffs(), b.coeffs(), a.coeffs().size(), a.wcap()));
}

void BM_OracleSerial(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle::enumerate(static_cast<int>(state.range(0)), {.parallel = false}));
}

void BM_OracleParallel(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle::enumerate(static_cast<int>(state.range(0)), {.parallel = true}));
}

} // namespace

BENCHMARK(BM_CauchySerial)->Arg(64)->Arg(160)->Arg(320)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CauchyParallel)->Arg(64)->Arg(160)->Arg(320)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSerial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

int main(int argc, char **argv)
{
    benchmark::Initialize(&argc, argv);
    benchmark::AddCustomContext("omp_max_threads", std::to_string(omp_get_max_threads()));
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
