#include <benchmark/benchmark.h>

#include "fimcast/design.hpp"
#include "fimcast/embedding.hpp"
#include "fimcast/forecast.hpp"
#include "fimcast/generators.hpp"
#include "fimcast/inference.hpp"

namespace {

using namespace fimcast;

Series benchmark_series(int n) {
    MackeyGlassConfig cfg;
    cfg.n_samples = n;
    return mackey_glass(cfg);
}

void BM_MackeyGlass(benchmark::State& state) {
    MackeyGlassConfig cfg;
    cfg.n_samples = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mackey_glass(cfg));
    }
}
BENCHMARK(BM_MackeyGlass)->Arg(1500)->Arg(15000);

void BM_DelayEmbed(benchmark::State& state) {
    const Series series = benchmark_series(static_cast<int>(state.range(0)));
    const EmbeddingConfig cfg{5, 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(delay_embed(series, cfg));
    }
}
BENCHMARK(BM_DelayEmbed)->Arg(1500)->Arg(15000);

void BM_BuildDesignMatrix(benchmark::State& state) {
    const Series series = benchmark_series(1500);
    const DelayMatrix delays = delay_embed(series, EmbeddingConfig{5, 1});
    const MonomialBasis basis = enumerate_monomials(5, 3);
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_design_matrix(delays, series, 1, m, basis));
    }
}
BENCHMARK(BM_BuildDesignMatrix)->Arg(300)->Arg(1000);

void BM_FitCoefficients(benchmark::State& state) {
    const Series series = benchmark_series(1500);
    const DelayMatrix delays = delay_embed(series, EmbeddingConfig{5, 1});
    const MonomialBasis basis = enumerate_monomials(5, 3);
    const DesignMatrix dm =
        build_design_matrix(delays, series, 1, static_cast<int>(state.range(0)), basis);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_coefficients(dm));
    }
}
BENCHMARK(BM_FitCoefficients)->Arg(300)->Arg(1000);

void BM_DirectPredict(benchmark::State& state) {
    const Series series = benchmark_series(1500);
    const DelayMatrix delays = delay_embed(series, EmbeddingConfig{5, 1});
    const MonomialBasis basis = enumerate_monomials(5, 3);
    const DesignMatrix dm = build_design_matrix(delays, series, 1, 300, basis);
    FittedModel model = fit_coefficients(dm);
    model.embedding = EmbeddingConfig{5, 1};
    model.T = 1;
    const ForecastConfig fc;
    for (auto _ : state) {
        benchmark::DoNotOptimize(predict(series, model, fc));
    }
}
BENCHMARK(BM_DirectPredict);

} // namespace

BENCHMARK_MAIN();
