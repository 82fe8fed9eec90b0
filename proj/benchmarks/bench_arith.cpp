#include "ffgs/field.hpp"
#include "ffgs/witt.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

void BM_WittMul(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const int m = static_cast<int>(state.range(1));
    auto f = ffgs::Field::make(p, 2);
    auto ring = ffgs::WittRing::get(f, m);
    std::mt19937_64 rng(1);
    auto a = ring->random(rng);
    auto b = ring->random(rng);
    for (auto _ : state) {
        a = ring->mul(a, b);
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_WittMul)->Args({2, 4})->Args({5, 6})->Args({97, 8});

void BM_WittComponents(benchmark::State& state) {
    auto f = ffgs::Field::make(static_cast<int>(state.range(0)), 2);
    auto ring = ffgs::WittRing::get(f, static_cast<int>(state.range(1)));
    std::mt19937_64 rng(2);
    auto a = ring->random(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(ring->components(a));
}
BENCHMARK(BM_WittComponents)->Args({2, 4})->Args({97, 8});

} // namespace
