/**
 * @file bench_kernels.cpp
 * @brief Serial reference kernels against their OpenMP counterparts.
 *
 * Each benchmark takes the execution mode as its argument: 0 serial, 1 parallel.
 */

#include <benchmark/benchmark.h>

#include <random>

#include "thompson/haagerup.hpp"
#include "thompson/oracles.hpp"

using namespace thompson;

namespace {

Execution mode(const benchmark::State& state) {
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_PhiTermsGn(benchmark::State& state) {
    const VElement g = family_gn(6);
    for (auto _ : state) benchmark::DoNotOptimize(phi_terms(g.pair(), mode(state)));
}

void BM_PhiTermsRandom(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::vector<VElement> sample;
    for (int i = 0; i < 20; ++i) sample.push_back(random_word(rng, 10));
    for (auto _ : state)
        for (const auto& g : sample) benchmark::DoNotOptimize(phi_terms(g.pair(), mode(state)));
}

void BM_VanishingScan(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(vanishing_scan(mpq_class(1, 2), 6, mode(state)));
}

void BM_Gram(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::vector<VElement> sample;
    for (int i = 0; i < 10; ++i) sample.push_back(random_nonidentity(rng, 6));
    for (auto _ : state) benchmark::DoNotOptimize(gram_psd_check(sample, mpq_class(1, 2), mode(state)));
}

void BM_WordInjectivity(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(check_word_injectivity(8, mode(state)));
}

void BM_CyclicForest(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(check_cyclic_forest_lemma(6, mode(state)));
}

void BM_TermParity(benchmark::State& state) {
    std::vector<VElement> all;
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto e = all_elements(n);
        all.insert(all.end(), e.begin(), e.end());
    }
    for (auto _ : state) benchmark::DoNotOptimize(check_term_parity(all, mode(state)));
}

}  // namespace

BENCHMARK(BM_PhiTermsGn)->Arg(0)->Arg(1);
BENCHMARK(BM_PhiTermsRandom)->Arg(0)->Arg(1);
BENCHMARK(BM_VanishingScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gram)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WordInjectivity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CyclicForest)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TermParity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
