#include "ffgs/cohomology.hpp"
#include "ffgs/group_scheme.hpp"
#include "ffgs/iso.hpp"
#include "ffgs/linalg.hpp"
#include "ffgs_cli/cli.hpp"
#include "ffgs_cli/serialize.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

ffgs::ChainMatrix random_matrix(const ffgs::WittRingPtr& R, int n, std::mt19937_64& rng) {
    ffgs::ChainMatrix a(R, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = R->random(rng);
    return a;
}

void BM_HowellForm(benchmark::State& state) {
    auto R = ffgs::WittRing::get(ffgs::Field::make(3, 2), 4);
    std::mt19937_64 rng(3);
    const auto a = random_matrix(R, static_cast<int>(state.range(0)), rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(ffgs::howell_form(a));
}
BENCHMARK(BM_HowellForm)->Arg(4)->Arg(8)->Arg(16);

void BM_ElementaryDivisors(benchmark::State& state) {
    auto R = ffgs::WittRing::get(ffgs::Field::make(2, 1), 6);
    std::mt19937_64 rng(4);
    const auto a = random_matrix(R, static_cast<int>(state.range(0)), rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(ffgs::elementary_divisors(a));
}
BENCHMARK(BM_ElementaryDivisors)->Arg(4)->Arg(8)->Arg(16);

void BM_DualAndFourway(benchmark::State& state) {
    auto f = ffgs::Field::make(2, 2);
    std::mt19937_64 rng(5);
    const auto m = ffgs::random_module(f, static_cast<int>(state.range(0)), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ffgs::dm_dual(m));
        benchmark::DoNotOptimize(ffgs::dm_fourway(m));
    }
}
BENCHMARK(BM_DualAndFourway)->Arg(3)->Arg(6);

void BM_IsoTest(benchmark::State& state) {
    auto f = ffgs::Field::make(2, 1);
    std::mt19937_64 rng(6);
    const auto m = ffgs::direct_sum(ffgs::gs_atom(f, "M11").p_part, ffgs::dm_alpha(f, 2));
    const auto [g, gi] = ffgs::random_automorphism(m.ring(), m.profile(), rng);
    const auto n = ffgs::change_basis(m, g, gi);
    for (auto _ : state)
        benchmark::DoNotOptimize(ffgs::module_iso_test(m, n));
}
BENCHMARK(BM_IsoTest);

void BM_PacketReports(benchmark::State& state) {
    const auto P = ffgs::io::load_packet(ffgs::cli::resolve_packet("k3_supersingular"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ffgs::h_mu_p(P, 2));
        benchmark::DoNotOptimize(ffgs::phi_fl_report(P, 2));
        benchmark::DoNotOptimize(ffgs::les_check(P, 2));
    }
}
BENCHMARK(BM_PacketReports);

} // namespace
