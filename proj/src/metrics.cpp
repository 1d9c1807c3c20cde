#include "stereocolor/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "stereocolor/errors.hpp"
#include "stereocolor/kernels.hpp"

namespace stereocolor {

double psnr(const Image& a, const Image& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("psnr: image sizes differ");
    const auto da = a.data();
    const auto db = b.data();
    // Neumaier-compensated sum: exact closed forms stay exact for large images
    double sum = 0.0;
    double carry = 0.0;
    for (std::size_t i = 0; i < da.size(); ++i) {
        const double d = da[i] - db[i];
        const double term = d * d;
        const double t = sum + term;
        carry += std::abs(sum) >= term ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    sum += carry;
    if (sum == 0.0) return std::numeric_limits<double>::infinity();
    const double mse = sum / static_cast<double>(da.size());
    return 10.0 * std::log10(1.0 / mse);
}

std::vector<double> gaussian_taps(int size, double sigma) {
    std::vector<double> taps(static_cast<std::size_t>(size));
    const double center = 0.5 * (size - 1);
    double total = 0.0;
    for (int i = 0; i < size; ++i) {
        const double d = i - center;
        taps[static_cast<std::size_t>(i)] = std::exp(-d * d / (2.0 * sigma * sigma));
        total += taps[static_cast<std::size_t>(i)];
    }
    for (double& t : taps) t /= total;
    return taps;
}

std::vector<double> luma_plane(const Image& img) {
    std::vector<double> out(img.pixel_count());
    kernels::omp::luma(img.data(), out);
    return out;
}

double ssim(const Image& a, const Image& b, const SsimParams& params) {
    if (!a.same_shape(b)) throw DimensionMismatch("ssim: image sizes differ");
    if (std::min(a.width(), a.height()) < params.window)
        throw TooSmall("ssim: images must be at least " + std::to_string(params.window) + " pixels on each side");
    const std::vector<double> taps = gaussian_taps(params.window, params.sigma);
    const double c1 = (params.k1 * params.dynamic_range) * (params.k1 * params.dynamic_range);
    const double c2 = (params.k2 * params.dynamic_range) * (params.k2 * params.dynamic_range);
    return kernels::omp::ssim_mean(luma_plane(a), luma_plane(b), a.width(), a.height(), taps, c1, c2);
}

MetricsReport evaluate_pair(const Image& corrected, const Image& ground_truth) {
    return {psnr(corrected, ground_truth), ssim(corrected, ground_truth), std::nullopt};
}

TimingResult time_method(const CorrectionFn& method, const Stereopair& pair, int repeats, bool warmup) {
    if (repeats < 1) throw InvalidArgument("time_method: repeats must be >= 1");
    using Clock = std::chrono::steady_clock;
    if (warmup) (void)method(pair.left, pair.right);
    TimingResult result;
    for (int r = 0; r < repeats; ++r) {
        const auto start = Clock::now();
        const Image out = method(pair.left, pair.right);
        const auto stop = Clock::now();
        // keep at least one tick so a trivially fast method still reports > 0
        const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
        result.samples_ms.push_back(std::max(ms, 1e-6));
        (void)out;
    }
    result.min_ms = *std::min_element(result.samples_ms.begin(), result.samples_ms.end());
    return result;
}

}  // namespace stereocolor
