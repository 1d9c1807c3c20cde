#include "stereocolor/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "stereocolor/color_space.hpp"
#include "stereocolor/config.hpp"
#include "stereocolor/errors.hpp"
#include "stereocolor/rng.hpp"

namespace stereocolor {

namespace {

const std::vector<std::string>& param_names(DistortionOp op) {
    static const std::vector<std::string> bc{"brightness", "contrast"};
    static const std::vector<std::string> gamma{"gamma"};
    static const std::vector<std::string> hsv{"hue_shift", "sat_scale", "val_scale"};
    switch (op) {
        case DistortionOp::BrightnessContrast:
            return bc;
        case DistortionOp::Gamma:
            return gamma;
        case DistortionOp::HueSaturationValue:
            return hsv;
    }
    return gamma;
}

std::string format_exact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class Fn>
Image map_pixels(const Image& img, Fn fn) {
    Image out(img.width(), img.height());
    const auto in = img.data();
    auto dst = out.data();
    const auto n = static_cast<std::ptrdiff_t>(img.pixel_count());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < n; ++p) {
        const auto i = 3 * static_cast<std::size_t>(p);
        const Vec3 q = fn(Vec3{in[i], in[i + 1], in[i + 2]});
        dst[i] = q[0];
        dst[i + 1] = q[1];
        dst[i + 2] = q[2];
    }
    return out;
}

}  // namespace

std::string_view to_string(DistortionOp op) {
    switch (op) {
        case DistortionOp::BrightnessContrast:
            return "bc";
        case DistortionOp::Gamma:
            return "gamma";
        case DistortionOp::HueSaturationValue:
            return "hsv";
    }
    return "unknown";
}

DistortionOp parse_distortion_op(std::string_view token) {
    if (token == "bc") return DistortionOp::BrightnessContrast;
    if (token == "gamma") return DistortionOp::Gamma;
    if (token == "hsv") return DistortionOp::HueSaturationValue;
    throw InvalidArgument("unknown distortion '" + std::string(token) + "' (expected bc, gamma or hsv)");
}

DistortionRanges::DistortionRanges()
    : ranges_{{"brightness", {-0.3, 0.3}}, {"contrast", {-0.3, 0.3}},  {"gamma", {0.7, 1.4}},
              {"hue_shift", {-20.0, 20.0}}, {"sat_scale", {0.7, 1.3}}, {"val_scale", {0.7, 1.3}}} {}

DistortionRanges DistortionRanges::from_config(const Config& config) {
    DistortionRanges r;
    for (auto& [name, interval] : r.ranges_) {
        interval.lo = config.get_double("distort." + name + "_min", interval.lo);
        interval.hi = config.get_double("distort." + name + "_max", interval.hi);
        if (interval.lo > interval.hi) throw InvalidArgument("distort." + name + ": min exceeds max");
    }
    return r;
}

const DistortionRanges::Interval& DistortionRanges::at(const std::string& name) const {
    const auto it = ranges_.find(name);
    if (it == ranges_.end()) throw InvalidArgument("no range for parameter '" + name + "'");
    return it->second;
}

void DistortionRanges::set(const std::string& name, Interval interval) { ranges_[name] = interval; }

double DistortionSpec::param(const std::string& name) const {
    const auto it = params.find(name);
    if (it == params.end())
        throw InvalidArgument("distortion '" + std::string(to_string(op)) + "' is missing parameter '" + name + "'");
    return it->second;
}

void DistortionSpec::validate(const DistortionRanges& ranges) const {
    for (const std::string& name : param_names(op)) {
        const double v = param(name);
        const auto& r = ranges.at(name);
        if (!(v >= r.lo && v <= r.hi))
            throw InvalidArgument("distortion parameter " + name + " = " + format_exact(v) + " outside [" +
                                  format_exact(r.lo) + ", " + format_exact(r.hi) + "]");
    }
}

Image apply_brightness_contrast(const Image& img, double brightness, double contrast) {
    // x + contrast*(x - 0.5) + brightness keeps (0, 0) bit-exact
    Image out = map_pixels(img, [=](const Vec3& p) {
        Vec3 q{};
        for (std::size_t c = 0; c < 3; ++c) q[c] = p[c] + contrast * (p[c] - 0.5) + brightness;
        return q;
    });
    clamp_in_place(out);
    return out;
}

Image apply_gamma(const Image& img, double gamma) {
    if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
    return map_pixels(img, [=](const Vec3& p) {
        return Vec3{std::pow(std::max(p[0], 0.0), gamma), std::pow(std::max(p[1], 0.0), gamma),
                    std::pow(std::max(p[2], 0.0), gamma)};
    });
}

Image apply_hsv_shift(const Image& img, double hue_shift, double sat_scale, double val_scale) {
    Image out = map_pixels(img, [=](const Vec3& p) {
        Vec3 hsv = color::rgb_to_hsv(p);
        hsv[0] = std::fmod(hsv[0] + hue_shift, 360.0);
        if (hsv[0] < 0.0) hsv[0] += 360.0;
        hsv[1] = std::clamp(hsv[1] * sat_scale, 0.0, 1.0);
        hsv[2] = std::clamp(hsv[2] * val_scale, 0.0, 1.0);
        return color::hsv_to_rgb(hsv);
    });
    clamp_in_place(out);
    return out;
}

DistortionSpec identity_spec(DistortionOp op) {
    DistortionSpec spec;
    spec.op = op;
    switch (op) {
        case DistortionOp::BrightnessContrast:
            spec.params = {{"brightness", 0.0}, {"contrast", 0.0}};
            break;
        case DistortionOp::Gamma:
            spec.params = {{"gamma", 1.0}};
            break;
        case DistortionOp::HueSaturationValue:
            spec.params = {{"hue_shift", 0.0}, {"sat_scale", 1.0}, {"val_scale", 1.0}};
            break;
    }
    return spec;
}

DistortionSpec sample_spec(DistortionOp op, std::uint64_t seed, const DistortionRanges& ranges) {
    DistortionSpec spec;
    spec.op = op;
    spec.seed = seed;
    Rng rng(seed);
    for (const std::string& name : param_names(op)) {
        const auto& r = ranges.at(name);
        spec.params[name] = rng.uniform(r.lo, r.hi);
    }
    return spec;
}

Image apply_distortion(const Image& img, const DistortionSpec& spec) {
    switch (spec.op) {
        case DistortionOp::BrightnessContrast:
            return apply_brightness_contrast(img, spec.param("brightness"), spec.param("contrast"));
        case DistortionOp::Gamma:
            return clamped(apply_gamma(img, spec.param("gamma")));
        case DistortionOp::HueSaturationValue:
            return apply_hsv_shift(img, spec.param("hue_shift"), spec.param("sat_scale"), spec.param("val_scale"));
    }
    throw InvalidArgument("unknown distortion op");
}

Stereopair synthesize(const Stereopair& pair, const DistortionSpec& spec) {
    return synthesize(pair, std::vector<DistortionSpec>{spec});
}

Stereopair synthesize(const Stereopair& pair, const std::vector<DistortionSpec>& chain) {
    if (pair.gt_left) throw InvalidArgument("synthesize: pair already has a ground-truth view");
    pair.validate();
    Stereopair out;
    out.right = pair.right;
    out.gt_left = pair.left;
    out.left = pair.left;
    for (const DistortionSpec& spec : chain) out.left = apply_distortion(out.left, spec);
    return out;
}

std::string serialize_specs(const std::vector<DistortionSpec>& chain) {
    std::ostringstream out;
    for (const DistortionSpec& spec : chain) {
        out << "[distortion]\n";
        out << "op = " << to_string(spec.op) << "\n";
        out << "seed = " << spec.seed << "\n";
        for (const auto& [name, value] : spec.params) out << name << " = " << format_exact(value) << "\n";
    }
    return out.str();
}

std::vector<DistortionSpec> parse_specs(std::string_view text) {
    std::vector<DistortionSpec> chain;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (t == "[distortion]") {
            chain.emplace_back();
            continue;
        }
        if (chain.empty()) throw InvalidArgument("distortion sidecar: entry before [distortion] header");
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw InvalidArgument("distortion sidecar: malformed line '" + t + "'");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string value = trim(std::string_view(t).substr(eq + 1));
        DistortionSpec& spec = chain.back();
        if (key == "op")
            spec.op = parse_distortion_op(value);
        else if (key == "seed")
            spec.seed = std::stoull(value);
        else
            spec.params[key] = parse_double(value);
    }
    return chain;
}

}  // namespace stereocolor
