// Serial reference vs OpenMP kernels.

#include "wem/kernels.hpp"
#include "wem/simulator.hpp"

#include <benchmark/benchmark.h>

#include <memory>
#include <random>

namespace {

std::vector<wem::TrialJob> experiment_jobs(int pairs) {
    wem::ExperimentOptions o;
    o.n_trials = pairs;
    o.cursor.jitter_sigma = 3.0;
    return wem::plan_experiment(o);
}

std::vector<wem::Point> random_points(std::size_t n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> x(-5.0, 105.0);
    std::uniform_real_distribution<double> y(-30.0, 230.0);
    std::vector<wem::Point> pts(n);
    for (auto& p : pts) {
        p = {x(rng), y(rng)};
    }
    return pts;
}

const wem::ItemOutline& curved_outline() {
    static const auto outline = wem::compute_item_outline({100, 20, 1, 1, 0, 10});
    return outline;
}

void BM_TrialsSerial(benchmark::State& state) {
    const auto jobs = experiment_jobs(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wem::kernels::run_trials_serial(jobs));
    }
}

void BM_TrialsParallel(benchmark::State& state) {
    const auto jobs = experiment_jobs(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wem::kernels::run_trials_parallel(jobs));
    }
}

void BM_ContainsSerial(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wem::kernels::contains_batch_serial(curved_outline(), pts));
    }
}

void BM_ContainsParallel(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wem::kernels::contains_batch_parallel(curved_outline(), pts));
    }
}

std::vector<double> unit_grid() {
    std::vector<double> g(11);
    for (int i = 0; i <= 10; ++i) {
        g[static_cast<std::size_t>(i)] = i / 10.0;
    }
    return g;
}

void BM_AreaLatticeSerial(benchmark::State& state) {
    const auto g = unit_grid();
    for (auto _ : state) {
        benchmark::DoNotOptimize(wem::kernels::area_lattice_serial(
            {100, 20, 0, 0, 0, 10}, g, g, g, wem::FormulaMode::literal));
    }
}

void BM_AreaLatticeParallel(benchmark::State& state) {
    const auto g = unit_grid();
    for (auto _ : state) {
        benchmark::DoNotOptimize(wem::kernels::area_lattice_parallel(
            {100, 20, 0, 0, 0, 10}, g, g, g, wem::FormulaMode::literal));
    }
}

} // namespace

BENCHMARK(BM_TrialsSerial)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsParallel)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ContainsSerial)->Arg(1 << 16);
BENCHMARK(BM_ContainsParallel)->Arg(1 << 16);
BENCHMARK(BM_AreaLatticeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AreaLatticeParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
