#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stereocolor/image.hpp"

namespace stereocolor {

class Config;

enum class DistortionOp { BrightnessContrast, Gamma, HueSaturationValue };

/// CLI token: "bc", "gamma", "hsv".
std::string_view to_string(DistortionOp op);
/// Throws InvalidArgument on an unknown token.
DistortionOp parse_distortion_op(std::string_view token);

/// Parameter names per operator:
///   BrightnessContrast: brightness, contrast
///   Gamma:              gamma
///   HueSaturationValue: hue_shift, sat_scale, val_scale
struct DistortionSpec {
    DistortionOp op = DistortionOp::Gamma;
    std::map<std::string, double> params;
    std::uint64_t seed = 0;

    /// Throws InvalidArgument if a parameter is missing or outside `ranges`.
    void validate(const class DistortionRanges& ranges) const;
    double param(const std::string& name) const;

    friend bool operator==(const DistortionSpec&, const DistortionSpec&) = default;
};

/// Closed parameter intervals used for sampling and validation.
class DistortionRanges {
public:
    struct Interval {
        double lo;
        double hi;
    };

    /// brightness, contrast in [-0.3, 0.3]; gamma in [0.7, 1.4]; hue_shift in [-20, 20] degrees;
    /// sat_scale, val_scale in [0.7, 1.3].
    DistortionRanges();
    /// Defaults overridden by `distort.<name>_min` / `distort.<name>_max` keys.
    static DistortionRanges from_config(const Config& config);

    const Interval& at(const std::string& name) const;
    void set(const std::string& name, Interval interval);

private:
    std::map<std::string, Interval> ranges_;
};

Image apply_brightness_contrast(const Image& img, double brightness, double contrast);
Image apply_gamma(const Image& img, double gamma);
Image apply_hsv_shift(const Image& img, double hue_shift, double sat_scale, double val_scale);

/// The operator at its identity parameters.
DistortionSpec identity_spec(DistortionOp op);
/// Draws every parameter of `op` uniformly from `ranges` using only `seed`.
DistortionSpec sample_spec(DistortionOp op, std::uint64_t seed, const DistortionRanges& ranges = {});

/// Applies one spec. Output is clamped to [0,1].
Image apply_distortion(const Image& img, const DistortionSpec& spec);

/// Distorts the left view; the original left becomes the ground truth. Throws
/// InvalidArgument if the pair already has a ground truth.
Stereopair synthesize(const Stereopair& pair, const DistortionSpec& spec);
/// Applies the specs left to right.
Stereopair synthesize(const Stereopair& pair, const std::vector<DistortionSpec>& chain);

/// Key-value sidecar text, one `[distortion]` section per spec, values at full precision.
std::string serialize_specs(const std::vector<DistortionSpec>& chain);
std::vector<DistortionSpec> parse_specs(std::string_view text);

}  // namespace stereocolor
