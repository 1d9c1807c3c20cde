#pragma once

// Test-only fixtures and oracles. Nothing here calls into the code paths it checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "stereocolor/image.hpp"
#include "stereocolor/mat3.hpp"

namespace testing_support {

using stereocolor::Image;

inline std::filesystem::path data_path(const std::string& name) {
    return std::filesystem::path(STEREOCOLOR_TEST_DATA) / name;
}

inline Image random_image(int w, int h, std::uint32_t seed, double lo = 0.0, double hi = 1.0) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Image img(w, h);
    for (double& v : img.data()) v = dist(gen);
    return img;
}

/// Random image with correlated channels: every pixel is a random mix of a shared
/// luminance and per-channel noise.
inline Image correlated_image(int w, int h, std::uint32_t seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double mix = 0.3 + 0.5 * u(gen);
    std::array<double, 3> gain{0.5 + 0.4 * u(gen), 0.5 + 0.4 * u(gen), 0.5 + 0.4 * u(gen)};
    Image img(w, h);
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
        const double l = u(gen);
        for (int c = 0; c < 3; ++c)
            img.data()[3 * p + static_cast<std::size_t>(c)] =
                0.05 + gain[static_cast<std::size_t>(c)] * (mix * l + (1.0 - mix) * u(gen));
    }
    return img;
}

/// Population covariance by explicit double loop over channel pairs.
inline std::array<std::array<double, 3>, 3> brute_covariance(const Image& img) {
    const std::size_t n = img.pixel_count();
    std::array<double, 3> mean{};
    for (std::size_t p = 0; p < n; ++p)
        for (int c = 0; c < 3; ++c) mean[static_cast<std::size_t>(c)] += img.data()[3 * p + static_cast<std::size_t>(c)];
    for (double& m : mean) m /= static_cast<double>(n);
    std::array<std::array<double, 3>, 3> cov{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t p = 0; p < n; ++p) s += (img.data()[3 * p + i] - mean[i]) * (img.data()[3 * p + j] - mean[j]);
            cov[i][j] = s / static_cast<double>(n);
        }
    return cov;
}

/// Textbook sRGB -> XYZ -> CIELAB for one pixel. The reference white is the XYZ of
/// RGB (1,1,1) under the sRGB primaries.
inline std::array<double, 3> lab_oracle(double r, double g, double b) {
    const auto lin = [](double c) { return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4); };
    const double R = lin(r), G = lin(g), B = lin(b);
    const double X = 0.4124564 * R + 0.3575761 * G + 0.1804375 * B;
    const double Y = 0.2126729 * R + 0.7151522 * G + 0.0721750 * B;
    const double Z = 0.0193339 * R + 0.1191920 * G + 0.9503041 * B;
    const double Xn = 0.4124564 + 0.3575761 + 0.1804375;
    const double Yn = 0.2126729 + 0.7151522 + 0.0721750;
    const double Zn = 0.0193339 + 0.1191920 + 0.9503041;
    const auto f = [](double t) {
        const double e = 216.0 / 24389.0;
        const double k = 24389.0 / 27.0;
        return t > e ? std::cbrt(t) : (k * t + 16.0) / 116.0;
    };
    const double fx = f(X / Xn), fy = f(Y / Yn), fz = f(Z / Zn);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

/// SSIM computed window by window with the full 2D Gaussian, no separable filtering.
inline double brute_force_ssim(const Image& a, const Image& b) {
    constexpr int win = 11;
    constexpr double sigma = 1.5;
    double w2[win][win];
    double total = 0.0;
    for (int i = 0; i < win; ++i)
        for (int j = 0; j < win; ++j) {
            const double di = i - 5.0, dj = j - 5.0;
            w2[i][j] = std::exp(-(di * di + dj * dj) / (2.0 * sigma * sigma));
            total += w2[i][j];
        }
    for (auto& row : w2)
        for (double& v : row) v /= total;
    const auto luma = [](const Image& img, int x, int y) {
        return 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) + 0.114 * img.at(x, y, 2);
    };
    const double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
    double sum = 0.0;
    int count = 0;
    for (int y0 = 0; y0 + win <= a.height(); ++y0)
        for (int x0 = 0; x0 + win <= a.width(); ++x0) {
            double ma = 0.0, mb = 0.0;
            for (int i = 0; i < win; ++i)
                for (int j = 0; j < win; ++j) {
                    ma += w2[i][j] * luma(a, x0 + j, y0 + i);
                    mb += w2[i][j] * luma(b, x0 + j, y0 + i);
                }
            double va = 0.0, vb = 0.0, cov = 0.0;
            for (int i = 0; i < win; ++i)
                for (int j = 0; j < win; ++j) {
                    const double da = luma(a, x0 + j, y0 + i) - ma;
                    const double db = luma(b, x0 + j, y0 + i) - mb;
                    va += w2[i][j] * da * da;
                    vb += w2[i][j] * db * db;
                    cov += w2[i][j] * da * db;
                }
            sum += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
            ++count;
        }
    return sum / count;
}

/// W1 between equal-size samples: mean absolute difference of the sorted values.
inline double sorted_w1(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s / static_cast<double>(a.size());
}

/// Frobenius distance relative to `want`.
inline double relative_error(const stereocolor::Mat3& got, const stereocolor::Mat3& want) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < 9; ++i) {
        num += (got.m[i] - want.m[i]) * (got.m[i] - want.m[i]);
        den += want.m[i] * want.m[i];
    }
    return std::sqrt(num / den);
}

inline Image per_channel_affine(const Image& img, const stereocolor::Vec3& gain, const stereocolor::Vec3& offset) {
    Image out = img;
    for (std::size_t p = 0; p < out.pixel_count(); ++p) {
        stereocolor::Vec3 v = out.pixel(p);
        for (std::size_t c = 0; c < 3; ++c) v[c] = gain[c] * v[c] + offset[c];
        out.set_pixel(p, v);
    }
    return out;
}

/// `count` unit directions, uniform on the sphere, fixed by `seed`.
inline std::vector<stereocolor::Vec3> probe_axes(std::uint64_t seed, int count) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    std::vector<stereocolor::Vec3> axes;
    while (static_cast<int>(axes.size()) < count) {
        const stereocolor::Vec3 v{normal(gen), normal(gen), normal(gen)};
        const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (n < 1e-6) continue;
        axes.push_back({v[0] / n, v[1] / n, v[2] / n});
    }
    return axes;
}

/// Mean W1 of 1-D projections against a fixed reference; reference projections are sorted once.
class SlicedDistance {
public:
    SlicedDistance(const Image& reference, std::vector<stereocolor::Vec3> axes) : axes_(std::move(axes)) {
        for (const stereocolor::Vec3& axis : axes_) {
            std::vector<double> proj = project(reference, axis);
            std::sort(proj.begin(), proj.end());
            sorted_.push_back(std::move(proj));
        }
    }

    double operator()(const Image& img) const {
        double s = 0.0;
        for (std::size_t i = 0; i < axes_.size(); ++i) {
            std::vector<double> proj = project(img, axes_[i]);
            std::sort(proj.begin(), proj.end());
            double d = 0.0;
            for (std::size_t k = 0; k < proj.size(); ++k) d += std::abs(proj[k] - sorted_[i][k]);
            s += d / static_cast<double>(proj.size());
        }
        return s / static_cast<double>(axes_.size());
    }

private:
    static std::vector<double> project(const Image& img, const stereocolor::Vec3& axis) {
        std::vector<double> out(img.pixel_count());
        for (std::size_t p = 0; p < out.size(); ++p) {
            const stereocolor::Vec3 v = img.pixel(p);
            out[p] = axis[0] * v[0] + axis[1] * v[1] + axis[2] * v[2];
        }
        return out;
    }

    std::vector<stereocolor::Vec3> axes_;
    std::vector<std::vector<double>> sorted_;
};

}  // namespace testing_support
