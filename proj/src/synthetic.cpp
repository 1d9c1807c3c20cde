#include "stereocolor/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stereocolor/errors.hpp"
#include "stereocolor/rng.hpp"

namespace stereocolor {

namespace {

int mirror(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - 1 - i;
}

}  // namespace

Image make_scene(int width, int height, std::uint64_t seed, double lo, double hi) {
    Rng rng(seed);
    Image img(width, height);

    // background: two-corner color gradient
    Vec3 c0{}, c1{};
    for (auto& v : c0) v = rng.uniform(0.2, 0.8);
    for (auto& v : c1) v = rng.uniform(0.2, 0.8);
    const double angle = rng.uniform(0.0, 6.283185307179586);
    const double ux = std::cos(angle), uy = std::sin(angle);

    struct Blob {
        double cx, cy, rx, ry, softness;
        bool box;
        Vec3 color;
    };
    std::vector<Blob> blobs(8 + static_cast<std::size_t>(rng.uniform() * 8));
    for (Blob& b : blobs) {
        b.cx = rng.uniform(0.0, width);
        b.cy = rng.uniform(0.0, height);
        b.rx = rng.uniform(0.05, 0.3) * width;
        b.ry = rng.uniform(0.05, 0.3) * height;
        b.softness = rng.uniform(0.05, 0.4);
        b.box = rng.uniform() < 0.4;
        for (auto& v : b.color) v = rng.uniform(0.0, 1.0);
    }
    const double fx = rng.uniform(0.15, 0.6), fy = rng.uniform(0.15, 0.6);

    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const double t = 0.5 + 0.5 * ((x / static_cast<double>(width) - 0.5) * ux + (y / static_cast<double>(height) - 0.5) * uy);
            Vec3 p{};
            for (std::size_t c = 0; c < 3; ++c) p[c] = c0[c] + (c1[c] - c0[c]) * t;
            for (const Blob& b : blobs) {
                const double dx = (x - b.cx) / b.rx;
                const double dy = (y - b.cy) / b.ry;
                const double d = b.box ? std::max(std::abs(dx), std::abs(dy)) : std::sqrt(dx * dx + dy * dy);
                const double alpha = std::clamp((1.0 - d) / b.softness, 0.0, 1.0);
                for (std::size_t c = 0; c < 3; ++c) p[c] += alpha * (b.color[c] - p[c]);
            }
            const double texture = 0.03 * std::sin(fx * x + 0.7 * std::sin(fy * y)) * std::cos(fy * y);
            for (int c = 0; c < 3; ++c) {
                const double v = std::clamp(p[static_cast<std::size_t>(c)] + texture + rng.uniform(-0.01, 0.01), 0.0, 1.0);
                img.at(x, y, c) = lo + (hi - lo) * v;
            }
        }
    return img;
}

Stereopair make_stereo_scene(int width, int height, std::uint64_t seed, int disparity, double lo, double hi) {
    Stereopair pair;
    pair.left = make_scene(width, height, seed, lo, hi);
    pair.right = Image(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const int sx = ((x + disparity) % width + width) % width;
            for (int c = 0; c < 3; ++c) pair.right.at(x, y, c) = pair.left.at(sx, y, c);
        }
    return pair;
}

Image make_probe(const Image& src, int size) {
    if (size < 1) throw InvalidArgument("make_probe: size must be positive");
    Image out(size, size);
    const int ox = (src.width() - size) / 2;
    const int oy = (src.height() - size) / 2;
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            const int sx = mirror(ox + x, src.width());
            const int sy = mirror(oy + y, src.height());
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = src.at(sx, sy, c);
        }
    return out;
}

}  // namespace stereocolor
