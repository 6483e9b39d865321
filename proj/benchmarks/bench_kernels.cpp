#include <benchmark/benchmark.h>

#include "qsearch/f_synthesis.hpp"
#include "qsearch/multipod.hpp"
#include "qsearch/reflections.hpp"
#include "qsearch/schedule.hpp"

using namespace qsearch;

static void BM_grover_step_direct(benchmark::State& state) {
    const QuditShape shape(3, static_cast<int>(state.range(0)));
    const LocalGate f = householder_f(3).gate();
    const StateVector axis = prepare_uniform(shape, f);
    const SearchSchedule sched = deterministic_schedule(shape.N());
    const BasisIndex marked = BasisIndex::from_flat(shape, shape.N() / 3);
    StateVector s = axis;
    for (auto _ : state) {
        grover_step(s, marked, sched.phi, sched.phi, axis);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(shape.N()));
}
BENCHMARK(BM_grover_step_direct)->DenseRange(6, 12, 2)->Unit(benchmark::kMicrosecond);

static void BM_grover_step_gates(benchmark::State& state) {
    const QuditShape shape(3, static_cast<int>(state.range(0)));
    const LocalGate f = householder_f(3).gate();
    const SearchSchedule sched = deterministic_schedule(shape.N());
    const BasisIndex marked = BasisIndex::from_flat(shape, shape.N() / 3);
    StateVector s = prepare_uniform(shape, f);
    for (auto _ : state) {
        grover_step_via_gates(s, marked, sched.phi, sched.phi, f);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(shape.N()));
}
BENCHMARK(BM_grover_step_gates)->DenseRange(6, 12, 2)->Unit(benchmark::kMicrosecond);

static void BM_local_gate(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const QuditShape shape(d, static_cast<int>(state.range(1)));
    const LocalGate g = dft(d).gate();
    StateVector s(shape);
    int k = 0;
    for (auto _ : state) {
        apply_local_gate(s, g, k);
        k = (k + 1) % shape.n();
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(shape.N()));
}
BENCHMARK(BM_local_gate)->Args({2, 18})->Args({3, 12})->Args({5, 8})->Unit(benchmark::kMicrosecond);

static void BM_propagate(benchmark::State& state) {
    PulseJob job = f_pulse_job(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(job).matrix.data());
    }
}
BENCHMARK(BM_propagate)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
