#pragma once

#include <cstdint>

#include "stereocolor/image.hpp"

namespace stereocolor {

/// Deterministic natural-looking test scene: a smooth color gradient with blurred
/// ellipses and rectangles plus fine texture. Samples lie in [lo, hi].
Image make_scene(int width, int height, std::uint64_t seed, double lo = 0.05, double hi = 0.85);

/// Stereo-like pair: the right view is the left view circularly shifted by `disparity`
/// columns, so both views share exactly the same color distribution.
Stereopair make_stereo_scene(int width, int height, std::uint64_t seed, int disparity = 4, double lo = 0.05,
                             double hi = 0.85);

/// `size` x `size` crop around the image center, mirror-extended when the source is smaller.
Image make_probe(const Image& src, int size);

}  // namespace stereocolor
