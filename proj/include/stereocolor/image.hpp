#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "stereocolor/mat3.hpp"

namespace stereocolor {

/// Interleaved 3-channel floating point image, samples nominally in [0,1].
class Image {
public:
    static constexpr int kChannels = 3;

    Image() = default;
    /// Throws InvalidArgument unless width >= 1 and height >= 1.
    Image(int width, int height, double fill = 0.0);
    /// Takes ownership of interleaved samples; size must equal width*height*3.
    Image(int width, int height, std::vector<double> samples);

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return kChannels; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_); }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    double& at(int x, int y, int c) { return data_[index(x, y, c)]; }
    double at(int x, int y, int c) const { return data_[index(x, y, c)]; }

    Vec3 pixel(std::size_t i) const { return {data_[3 * i], data_[3 * i + 1], data_[3 * i + 2]}; }
    void set_pixel(std::size_t i, const Vec3& p) {
        data_[3 * i] = p[0];
        data_[3 * i + 1] = p[1];
        data_[3 * i + 2] = p[2];
    }

    bool same_shape(const Image& other) const { return width_ == other.width_ && height_ == other.height_; }

    friend bool operator==(const Image&, const Image&) = default;

private:
    std::size_t index(int x, int y, int c) const {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * kChannels +
               static_cast<std::size_t>(c);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Copy with every sample clamped to [0,1].
Image clamped(const Image& img);
void clamp_in_place(Image& img);

/// Largest per-sample absolute difference. Throws DimensionMismatch.
double max_abs_diff(const Image& a, const Image& b);

struct Stereopair {
    Image left;
    Image right;
    std::optional<Image> gt_left;

    /// Throws DimensionMismatch if views disagree in size.
    void validate() const;
};

}  // namespace stereocolor
