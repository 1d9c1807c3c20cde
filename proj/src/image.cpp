#include "stereocolor/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stereocolor/errors.hpp"
#include "stereocolor/kernels.hpp"

namespace stereocolor {

Image::Image(int width, int height, double fill) : width_(width), height_(height) {
    if (width < 1 || height < 1)
        throw InvalidArgument("Image: dimensions must be positive, got " + std::to_string(width) + "x" +
                              std::to_string(height));
    data_.assign(pixel_count() * kChannels, fill);
}

Image::Image(int width, int height, std::vector<double> samples) : width_(width), height_(height), data_(std::move(samples)) {
    if (width < 1 || height < 1) throw InvalidArgument("Image: dimensions must be positive");
    if (data_.size() != pixel_count() * kChannels) throw InvalidArgument("Image: sample count does not match dimensions");
}

Image clamped(const Image& img) {
    Image out = img;
    clamp_in_place(out);
    return out;
}

void clamp_in_place(Image& img) { kernels::omp::clamp01(img.data()); }

double max_abs_diff(const Image& a, const Image& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("max_abs_diff: image sizes differ");
    double worst = 0.0;
    const auto da = a.data();
    const auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) worst = std::max(worst, std::abs(da[i] - db[i]));
    return worst;
}

void Stereopair::validate() const {
    if (!left.same_shape(right)) throw DimensionMismatch("stereopair: left and right views differ in size");
    if (gt_left && !gt_left->same_shape(left)) throw DimensionMismatch("stereopair: ground truth differs in size");
}

}  // namespace stereocolor
