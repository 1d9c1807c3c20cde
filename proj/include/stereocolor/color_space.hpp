#pragma once

#include <algorithm>
#include <cmath>

#include "stereocolor/image.hpp"
#include "stereocolor/mat3.hpp"

namespace stereocolor {

/// sRGB (D65) -> CIELAB. L in [0,100] for inputs in [0,1].
Image rgb_to_lab(const Image& img);
/// CIELAB -> sRGB, clamped to [0,1].
Image lab_to_rgb(const Image& img);
/// Same as lab_to_rgb without the final clamp.
Image lab_to_rgb_unclamped(const Image& img);

Image rgb_to_hsv(const Image& img);
Image hsv_to_rgb(const Image& img);

namespace color {

// linear sRGB primaries to XYZ, D65
inline constexpr Mat3 kRgbToXyz{{0.4124564, 0.3575761, 0.1804375,   //
                                 0.2126729, 0.7151522, 0.0721750,   //
                                 0.0193339, 0.1191920, 0.9503041}};
// exact inverse of kRgbToXyz to 1e-15
const Mat3& xyz_to_rgb();

// reference white is the XYZ of linear RGB (1,1,1)
inline constexpr Vec3 kWhite{0.4124564 + 0.3575761 + 0.1804375, 0.2126729 + 0.7151522 + 0.0721750,
                             0.0193339 + 0.1191920 + 0.9503041};

inline double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

inline double linear_to_srgb(double c) {
    return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

inline double lab_f(double t) {
    constexpr double delta = 6.0 / 29.0;
    return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

inline double lab_f_inv(double t) {
    constexpr double delta = 6.0 / 29.0;
    return t > delta ? t * t * t : 3.0 * delta * delta * (t - 4.0 / 29.0);
}

inline Vec3 rgb_to_lab(const Vec3& rgb) {
    const Vec3 lin{srgb_to_linear(rgb[0]), srgb_to_linear(rgb[1]), srgb_to_linear(rgb[2])};
    const Vec3 xyz = kRgbToXyz * lin;
    const double fx = lab_f(xyz[0] / kWhite[0]);
    const double fy = lab_f(xyz[1] / kWhite[1]);
    const double fz = lab_f(xyz[2] / kWhite[2]);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

/// Unclamped; out-of-gamut Lab yields samples outside [0,1].
inline Vec3 lab_to_rgb(const Vec3& lab) {
    const double fy = (lab[0] + 16.0) / 116.0;
    const double fx = fy + lab[1] / 500.0;
    const double fz = fy - lab[2] / 200.0;
    const Vec3 xyz{kWhite[0] * lab_f_inv(fx), kWhite[1] * lab_f_inv(fy), kWhite[2] * lab_f_inv(fz)};
    const Vec3 lin = xyz_to_rgb() * xyz;
    return {linear_to_srgb(lin[0]), linear_to_srgb(lin[1]), linear_to_srgb(lin[2])};
}

/// h in degrees [0,360), s and v in [0,1].
inline Vec3 rgb_to_hsv(const Vec3& rgb) {
    const double mx = std::max({rgb[0], rgb[1], rgb[2]});
    const double mn = std::min({rgb[0], rgb[1], rgb[2]});
    const double d = mx - mn;
    double h = 0.0;
    if (d > 0.0) {
        if (mx == rgb[0])
            h = 60.0 * std::fmod((rgb[1] - rgb[2]) / d, 6.0);
        else if (mx == rgb[1])
            h = 60.0 * ((rgb[2] - rgb[0]) / d + 2.0);
        else
            h = 60.0 * ((rgb[0] - rgb[1]) / d + 4.0);
        if (h < 0.0) h += 360.0;
    }
    const double s = mx > 0.0 ? d / mx : 0.0;
    return {h, s, mx};
}

inline Vec3 hsv_to_rgb(const Vec3& hsv) {
    const double h = hsv[0];
    const double s = hsv[1];
    const double v = hsv[2];
    const double c = v * s;
    const double hp = h / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    const double m = v - c;
    Vec3 rgb{};
    if (hp < 1.0)
        rgb = {c, x, 0.0};
    else if (hp < 2.0)
        rgb = {x, c, 0.0};
    else if (hp < 3.0)
        rgb = {0.0, c, x};
    else if (hp < 4.0)
        rgb = {0.0, x, c};
    else if (hp < 5.0)
        rgb = {x, 0.0, c};
    else
        rgb = {c, 0.0, x};
    return {rgb[0] + m, rgb[1] + m, rgb[2] + m};
}

}  // namespace color
}  // namespace stereocolor
