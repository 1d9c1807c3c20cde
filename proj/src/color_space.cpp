#include "stereocolor/color_space.hpp"

#include "stereocolor/kernels.hpp"

namespace stereocolor {

namespace color {

const Mat3& xyz_to_rgb() {
    static const Mat3 inv = inverse(kRgbToXyz);
    return inv;
}

}  // namespace color

Image rgb_to_lab(const Image& img) {
    Image out(img.width(), img.height());
    kernels::omp::rgb_to_lab(img.data(), out.data());
    return out;
}

Image lab_to_rgb_unclamped(const Image& img) {
    Image out(img.width(), img.height());
    kernels::omp::lab_to_rgb(img.data(), out.data());
    return out;
}

Image lab_to_rgb(const Image& img) {
    Image out = lab_to_rgb_unclamped(img);
    clamp_in_place(out);
    return out;
}

Image rgb_to_hsv(const Image& img) {
    Image out(img.width(), img.height());
    for (std::size_t i = 0; i < img.pixel_count(); ++i) out.set_pixel(i, color::rgb_to_hsv(img.pixel(i)));
    return out;
}

Image hsv_to_rgb(const Image& img) {
    Image out(img.width(), img.height());
    for (std::size_t i = 0; i < img.pixel_count(); ++i) out.set_pixel(i, color::hsv_to_rgb(img.pixel(i)));
    return out;
}

}  // namespace stereocolor
