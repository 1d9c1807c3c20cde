// Serial reference vs OpenMP kernels on a 512x512 RGB image.
// Run with STEREOCOLOR_THREADS=N to cap the OpenMP side.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "stereocolor/kernels.hpp"
#include "stereocolor/metrics.hpp"

namespace k = stereocolor::kernels;

namespace {

constexpr int kEdge = 512;
constexpr std::size_t kPixels = static_cast<std::size_t>(kEdge) * kEdge;

const std::vector<double>& rgb() {
    static const std::vector<double> data = [] {
        std::mt19937_64 gen(7);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> v(3 * kPixels);
        for (double& x : v) x = u(gen);
        return v;
    }();
    return data;
}

const std::vector<double>& gray(std::uint64_t seed) {
    static std::vector<double> a, b;
    std::vector<double>& v = seed == 0 ? a : b;
    if (v.empty()) {
        std::mt19937_64 gen(seed + 11);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        v.resize(kPixels);
        for (double& x : v) x = u(gen);
    }
    return v;
}

void set_bytes(benchmark::State& state, std::size_t bytes) {
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes));
}

template <bool Parallel>
void BM_Affine(benchmark::State& state) {
    const stereocolor::Mat3 m{{0.9, 0.05, 0.0, 0.1, 0.8, 0.1, 0.0, 0.05, 1.1}};
    std::vector<double> out(rgb().size());
    for (auto _ : state) {
        if constexpr (Parallel) k::omp::affine(rgb(), out, m, {0.01, 0.02, 0.03});
        else k::serial::affine(rgb(), out, m, {0.01, 0.02, 0.03});
        benchmark::DoNotOptimize(out.data());
    }
    set_bytes(state, rgb().size() * sizeof(double));
}

template <bool Parallel>
void BM_RgbToLab(benchmark::State& state) {
    std::vector<double> out(rgb().size());
    for (auto _ : state) {
        if constexpr (Parallel) k::omp::rgb_to_lab(rgb(), out);
        else k::serial::rgb_to_lab(rgb(), out);
        benchmark::DoNotOptimize(out.data());
    }
    set_bytes(state, rgb().size() * sizeof(double));
}

template <bool Parallel>
void BM_Covariance(benchmark::State& state) {
    for (auto _ : state) {
        const stereocolor::Vec3 mean = Parallel ? k::omp::channel_mean(rgb()) : k::serial::channel_mean(rgb());
        const stereocolor::Mat3 cov = Parallel ? k::omp::covariance(rgb(), mean) : k::serial::covariance(rgb(), mean);
        benchmark::DoNotOptimize(cov);
    }
    set_bytes(state, 2 * rgb().size() * sizeof(double));
}

template <bool Parallel>
void BM_Histogram(benchmark::State& state) {
    const k::Strided red{0, 3};
    for (auto _ : state) {
        auto h = Parallel ? k::omp::histogram(rgb(), red, 0.0, 1.0, 300) : k::serial::histogram(rgb(), red, 0.0, 1.0, 300);
        benchmark::DoNotOptimize(h.data());
    }
    set_bytes(state, kPixels * sizeof(double));
}

template <bool Parallel>
void BM_Ssim(benchmark::State& state) {
    const std::vector<double> taps = stereocolor::gaussian_taps(11, 1.5);
    for (auto _ : state) {
        const double v = Parallel ? k::omp::ssim_mean(gray(0), gray(1), kEdge, kEdge, taps, 1e-4, 9e-4)
                                  : k::serial::ssim_mean(gray(0), gray(1), kEdge, kEdge, taps, 1e-4, 9e-4);
        benchmark::DoNotOptimize(v);
    }
    set_bytes(state, 2 * kPixels * sizeof(double));
}

template <bool Parallel>
void BM_RegrainSweep(benchmark::State& state) {
    std::vector<double> out = rgb();
    std::vector<double> lambda(kPixels, 0.5);
    for (auto _ : state) {
        for (int parity : {0, 1}) {
            if constexpr (Parallel) k::omp::regrain_half_sweep(out, rgb(), rgb(), lambda, kEdge, kEdge, parity);
            else k::serial::regrain_half_sweep(out, rgb(), rgb(), lambda, kEdge, kEdge, parity);
        }
        benchmark::DoNotOptimize(out.data());
    }
    set_bytes(state, rgb().size() * sizeof(double));
}

}  // namespace

BENCHMARK(BM_Affine<false>)->Name("affine/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Affine<true>)->Name("affine/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RgbToLab<false>)->Name("rgb_to_lab/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RgbToLab<true>)->Name("rgb_to_lab/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Covariance<false>)->Name("mean_covariance/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Covariance<true>)->Name("mean_covariance/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Histogram<false>)->Name("histogram/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Histogram<true>)->Name("histogram/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ssim<false>)->Name("ssim/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ssim<true>)->Name("ssim/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RegrainSweep<false>)->Name("regrain_sweep/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RegrainSweep<true>)->Name("regrain_sweep/omp")->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
    stereocolor::kernels::apply_thread_cap();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
