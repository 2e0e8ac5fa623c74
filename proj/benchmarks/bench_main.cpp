#include <adiso/adiabatic.hpp>
#include <adiso/dynamics.hpp>
#include <adiso/metrics.hpp>

#include <benchmark/benchmark.h>

#include <numbers>

using namespace adiso;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

const ModePair& modes()
{
    static const ModePair m = derive_modes(CircuitParams{});
    return m;
}

PumpProfile operating_point(double length)
{
    PumpProfile p;
    p.length = length;
    p.omega_p = two_pi * 2e9;
    p.k_center = default_k_center(modes(), p.omega_p, two_pi * 6e9);
    return p;
}

ModelKind model_of(int i)
{
    return i == 0 ? ModelKind::Simple2x2Forward : i == 1 ? ModelKind::Rwa4x4 : ModelKind::Full4x4;
}

void BM_Propagate(benchmark::State& state)
{
    const SignalCoupling sc(operating_point(static_cast<double>(state.range(1))), modes(), two_pi * 6e9);
    const ModelKind kind = model_of(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(propagate(kind, sc, StateVector{1.0, 0.0, 0.0, 0.0}));
    state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_Propagate)->ArgsProduct({{0, 1, 2}, {800, 2000, 5000}})->Unit(benchmark::kMillisecond);

void BM_TransferMatrix(benchmark::State& state)
{
    const SignalCoupling sc(operating_point(2000.0), modes(), two_pi * 6e9);
    const ModelKind kind = model_of(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(transfer_matrix(kind, sc));
    state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_TransferMatrix)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state)
{
    const PumpProfile p = operating_point(2000.0);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(frequency_sweep(ModelKind::Rwa4x4, p, modes(), LossModel{}, 4e9, 8e9, n));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sweep)->Arg(21)->Arg(201)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_GeometricEstimate(benchmark::State& state)
{
    const SignalCoupling sc(operating_point(static_cast<double>(state.range(0))), modes(), two_pi * 6e9);
    for (auto _ : state)
        benchmark::DoNotOptimize(geometric_estimate(sc));
}
BENCHMARK(BM_GeometricEstimate)->Arg(800)->Arg(2000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
