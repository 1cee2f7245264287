#include <benchmark/benchmark.h>

#include <omp.h>

#include "dms/adaptive.hpp"
#include "dms/cusum.hpp"
#include "dms/max_test.hpp"
#include "dms/reference.hpp"
#include "dms/scale.hpp"
#include "dms/scenario.hpp"
#include "dms/sum_test.hpp"

namespace {

dms::DataMatrix make_data(std::size_t n, std::size_t p) {
    dms::ScenarioConfig cfg;
    cfg.n = n;
    cfg.p = p;
    cfg.covariance = dms::CovarianceKind::ar_toeplitz;
    cfg.noise = dms::NoiseKind::gaussian;
    cfg.seed = 7;
    return dms::generate_dataset(cfg);
}

void bm_cusum_field(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto p = static_cast<std::size_t>(state.range(1));
    const int want = static_cast<int>(state.range(2));
    omp_set_num_threads(want > 0 ? want : omp_get_num_procs());
    const dms::DataMatrix x = make_data(n, p);
    const dms::ScaleEstimates scales = dms::difference_variance(x);
    for (auto _ : state) {
        auto field = dms::compute_cusum_field(x, dms::Weighting::gamma_half, scales);
        benchmark::DoNotOptimize(field.values.data());
    }
}

void bm_cusum_field_reference(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto p = static_cast<std::size_t>(state.range(1));
    const dms::DataMatrix x = make_data(n, p);
    const dms::ScaleEstimates scales = dms::difference_variance(x);
    for (auto _ : state) {
        auto field = dms::reference::cusum_field(x, dms::Weighting::gamma_half, scales);
        benchmark::DoNotOptimize(field.values.data());
    }
}

void bm_trace_r2(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto p = static_cast<std::size_t>(state.range(1));
    const int want = static_cast<int>(state.range(2));
    omp_set_num_threads(want > 0 ? want : omp_get_num_procs());
    const dms::DataMatrix x = make_data(n, p);
    for (auto _ : state) {
        double v = dms::trace_r2_hat(x);
        benchmark::DoNotOptimize(v);
    }
}

void bm_trace_r2_reference(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto p = static_cast<std::size_t>(state.range(1));
    const dms::DataMatrix x = make_data(n, p);
    for (auto _ : state) {
        double v = dms::reference::trace_r2_hat(x);
        benchmark::DoNotOptimize(v);
    }
}

void bm_full_test(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto p = static_cast<std::size_t>(state.range(1));
    const int want = static_cast<int>(state.range(2));
    omp_set_num_threads(want > 0 ? want : omp_get_num_procs());
    const dms::DataMatrix x = make_data(n, p);
    for (auto _ : state) {
        auto rep = dms::dms_test(x, dms::DmsVariant::dms05);
        benchmark::DoNotOptimize(rep.p_combined);
    }
}

} // namespace

// Optimized kernels at 1 and all hardware threads against the
// direct-from-definition implementations. The reference CUSUM field is
// O(n^2 p), so it only runs at the small size.
BENCHMARK(bm_cusum_field)->Args({200, 200, 1})->Args({200, 200, 0})->Args({2000, 2000, 1});
BENCHMARK(bm_cusum_field_reference)->Args({200, 200, 1});
BENCHMARK(bm_trace_r2)->Args({200, 200, 1})->Args({2000, 2000, 1});
BENCHMARK(bm_trace_r2_reference)->Args({200, 200, 1});
BENCHMARK(bm_full_test)->Args({200, 200, 1})->Args({2000, 2000, 1});

BENCHMARK_MAIN();
