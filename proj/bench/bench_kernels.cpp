// Serial reference kernels against their OpenMP counterparts.

#include "tfline/kernels.hpp"
#include "tfline/transfinite.hpp"

#include <benchmark/benchmark.h>

using namespace tfline;

namespace {

const ResponseAssembly& assembly() {
    static const ResponseAssembly a(
        TerminatedLineSpec{{0, 2}, 1.0, 3.0, Resistance::open(), LineParams::lossless(1.0, 1.0),
                           SourceSpec::unit_step()},
        OrdinalIndex{0, 1}, TimeProfile::superlinear(1.0, 2.0), DigitBound::Strict);
    return a;
}

const BounceModel& model() {
    static const BounceModel m(FiniteLine{50.0, LineParams(0.001, 1.0, 0.001, 1.0), 0.2,
                                          Resistance(40.0)});
    return m;
}

std::vector<double> grid(std::int64_t count) {
    std::vector<double> t(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = 0.5 * static_cast<double>(i);
    return t;
}

template <auto Kernel>
void sample_window(benchmark::State& state) {
    const auto& gen = assembly().sequence().generator();
    const auto last = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(gen, 1, last));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void voltage_grid(benchmark::State& state) {
    const auto times = grid(state.range(0));
    const auto src = SourceSpec::unit_step();
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(model(), 17.0, times, src));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(sample_window<kernels::serial::sample>)->Name("sample/serial")->Arg(256)->Arg(2048);
BENCHMARK(sample_window<kernels::parallel::sample>)->Name("sample/parallel")->Arg(256)->Arg(2048);
BENCHMARK(voltage_grid<kernels::serial::voltage_grid>)->Name("voltage_grid/serial")->Arg(1000)->Arg(10000);
BENCHMARK(voltage_grid<kernels::parallel::voltage_grid>)->Name("voltage_grid/parallel")->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
