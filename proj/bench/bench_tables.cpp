// Table checking: OpenMP cell loop against the serial reference.
#include <benchmark/benchmark.h>

#include "kahyp/theories.hpp"

using namespace kahyp;

namespace {

void run(benchmark::State& state, const std::string& name, bool parallel)
{
    auto t = load_table(read_table_spec(name));
    for (auto _ : state) {
        auto r = parallel ? check_table(t) : check_table_serial(t);
        benchmark::DoNotOptimize(r.ok);
    }
}

void BM_kabo_parallel(benchmark::State& s) { run(s, "kabo", true); }
void BM_kabo_serial(benchmark::State& s) { run(s, "kabo", false); }
void BM_kaptt_parallel(benchmark::State& s) { run(s, "kaptt", true); }
void BM_kaptt_serial(benchmark::State& s) { run(s, "kaptt", false); }
void BM_netkat_parallel(benchmark::State& s) { run(s, "netkat", true); }
void BM_netkat_serial(benchmark::State& s) { run(s, "netkat", false); }

}  // namespace

BENCHMARK(BM_kabo_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kabo_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kaptt_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kaptt_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_netkat_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_netkat_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
