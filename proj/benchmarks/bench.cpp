#include <benchmark/benchmark.h>

#include "quadtail/bounds.hpp"
#include "quadtail/crossover.hpp"
#include "quadtail/montecarlo.hpp"
#include "quadtail/scalar.hpp"
#include "quadtail/spectral.hpp"

namespace {

using namespace quadtail;

SymmetricMatrix random_goe(std::size_t n, std::uint64_t seed) {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::GOE_LIKE;
    spec.n = n;
    spec.seed = seed;
    return generate_ensemble(spec);
}

SpectralSummary random_summary(std::size_t n, std::uint64_t seed) {
    return spectral_summary(random_goe(n, seed));
}

void BM_eigendecompose(benchmark::State& state) {
    const auto m = random_goe(std::size_t(state.range(0)), 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(eigendecompose(m));
}
BENCHMARK(BM_eigendecompose)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_lambda_m_bound(benchmark::State& state) {
    const auto s = random_summary(16, 7);
    const double t = 2.0 * s.alpha;
    const int m = int(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(lambda_m_bound(s, t, m));
}
BENCHMARK(BM_lambda_m_bound)->Arg(1)->Arg(20)->Arg(150);

void BM_twin_bound(benchmark::State& state) {
    const auto s = random_summary(16, 7);
    const double t = 2.0 * s.alpha;
    for (auto _ : state)
        benchmark::DoNotOptimize(twin_bound(s, t));
}
BENCHMARK(BM_twin_bound);

void BM_lm_optimal(benchmark::State& state) {
    const auto s = random_summary(16, 11); // GOE is indefinite; use |.| spectrum
    auto eigs = s.eigenvalues;
    for (auto& e : eigs) e = std::abs(e);
    const auto psd = SpectralSummary::from_eigenvalues(eigs);
    const double t = 2.0 * psd.alpha;
    for (auto _ : state)
        benchmark::DoNotOptimize(lm_optimal(psd, t));
}
BENCHMARK(BM_lm_optimal);

void BM_diff_poly(benchmark::State& state) {
    const int n = int(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(diff_poly(n));
}
BENCHMARK(BM_diff_poly)->Arg(20)->Arg(60)->Arg(100);

void BM_find_crossings(benchmark::State& state) {
    const int n = int(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(find_crossings(n));
}
BENCHMARK(BM_find_crossings)->Arg(8)->Arg(40)->Arg(100);

void BM_log_chi2_sf(benchmark::State& state) {
    double x = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_chi2_sf(10, x));
        x = x < 100 ? x + 0.1 : 1.0;
    }
}
BENCHMARK(BM_log_chi2_sf);

void BM_sample_delta(benchmark::State& state) {
    const auto s = random_summary(std::size_t(state.range(0)), 7);
    std::uint64_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_delta(s.eigenvalues, 1, i++));
}
BENCHMARK(BM_sample_delta)->Arg(4)->Arg(16)->Arg(64);

void BM_empirical_tail(benchmark::State& state) {
    const auto s = random_summary(8, 7);
    const double t = 2.0 * s.alpha;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            empirical_tail(s.eigenvalues, t, std::size_t(state.range(0)), 1));
}
BENCHMARK(BM_empirical_tail)->Arg(10000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
