#pragma once

// On-disk dataset fixtures built from the synthetic scene generator.

#include <filesystem>
#include <functional>
#include <random>
#include <string>

#include "stereocolor/png_io.hpp"
#include "stereocolor/synthetic.hpp"

namespace testing_support {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("stereocolor_" + tag + "_" + std::to_string(rd()));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

using LeftDistortion = std::function<stereocolor::Image(const stereocolor::Image&)>;

/// Writes `scenes` x `frames` stereo frames. With a distortion the layout is TRIPLET
/// (left = distorted, left_gt = clean), otherwise PAIR.
inline void write_dataset(const std::filesystem::path& root, int scenes, int frames, int size,
                          const LeftDistortion& distort = {}) {
    using namespace stereocolor;
    for (int s = 0; s < scenes; ++s) {
        char scene[32];
        std::snprintf(scene, sizeof scene, "scene_%02d", s);
        const auto dir = root / scene;
        std::filesystem::create_directories(dir);
        for (int f = 0; f < frames; ++f) {
            const Stereopair pair = make_stereo_scene(size, size, static_cast<std::uint64_t>(100 * s + f));
            char stem[16];
            std::snprintf(stem, sizeof stem, "%04d", f);
            write_png(dir / (std::string(stem) + "_right.png"), pair.right);
            if (distort) {
                write_png(dir / (std::string(stem) + "_left_gt.png"), pair.left);
                write_png(dir / (std::string(stem) + "_left.png"), distort(pair.left));
            } else {
                write_png(dir / (std::string(stem) + "_left.png"), pair.left);
            }
        }
    }
}

}  // namespace testing_support
