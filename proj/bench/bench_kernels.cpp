// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "squint/jointdesign.hpp"
#include "squint/kernels.hpp"

namespace {

using namespace squint;

const SystemConfig& default_cfg()
{
    static const SystemConfig cfg{};
    return cfg;
}

AnalogDesign default_design()
{
    const SystemConfig& cfg = default_cfg();
    const std::vector<double> psi(static_cast<std::size_t>(cfg.N_RF), 0.8);
    return design_theorem1(cfg, psi).design;
}

void BM_gain_profile_serial(benchmark::State& st)
{
    const AnalogDesign d = default_design();
    for (auto _ : st)
        benchmark::DoNotOptimize(gain_profile_serial(d, default_cfg(), 0, 0.8));
}

void BM_gain_profile_omp(benchmark::State& st)
{
    const AnalogDesign d = default_design();
    for (auto _ : st)
        benchmark::DoNotOptimize(gain_profile_omp(d, default_cfg(), 0, 0.8));
}

void BM_rate_trials_serial(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(rate_trials_serial(default_cfg(), static_cast<int>(st.range(0)), 7));
}

void BM_rate_trials_omp(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(rate_trials_omp(default_cfg(), static_cast<int>(st.range(0)), 7));
}

void BM_oracle_sweep_serial(benchmark::State& st)
{
    const auto inst = random_oracle_instances(static_cast<int>(st.range(0)), 11);
    for (auto _ : st)
        benchmark::DoNotOptimize(oracle_sweep_serial(inst, 1e-9L));
}

void BM_oracle_sweep_omp(benchmark::State& st)
{
    const auto inst = random_oracle_instances(static_cast<int>(st.range(0)), 11);
    for (auto _ : st)
        benchmark::DoNotOptimize(oracle_sweep_omp(inst, 1e-9L));
}

}  // namespace

BENCHMARK(BM_gain_profile_serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_gain_profile_omp)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_rate_trials_serial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rate_trials_omp)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_oracle_sweep_serial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_oracle_sweep_omp)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
