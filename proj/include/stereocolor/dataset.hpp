#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stereocolor/image.hpp"

namespace stereocolor {

// On-disk layout:
//   <root>/<scene>/<frame:04>_left.png      left view (the distorted one in TRIPLET data)
//   <root>/<scene>/<frame:04>_left_gt.png   ground-truth left view (TRIPLET only)
//   <root>/<scene>/<frame:04>_right.png     right view

enum class Layout { Triplet, Pair };
enum class Split { Train, Val, Test };

std::string_view to_string(Layout layout);
std::string_view to_string(Split split);
Split parse_split(std::string_view token);

struct FrameEntry {
    std::string scene;
    int frame = 0;
    std::filesystem::path left;
    std::filesystem::path right;
    std::optional<std::filesystem::path> left_gt;

    /// "<scene>/<frame:04>"
    std::string id() const;
};

struct SceneInfo {
    std::string scene_id;
    int frame_count = 0;
};

struct DatasetManifest {
    std::filesystem::path root;
    Layout layout = Layout::Pair;
    std::vector<SceneInfo> scenes;
    std::vector<FrameEntry> frames;  // sorted by scene, then frame
    /// Split unit -> split. Units are scene ids for TRIPLET data, frame ids for PAIR data.
    std::map<std::string, Split> split;
    std::vector<std::string> warnings;

    std::string split_unit(const FrameEntry& f) const;
    /// Throws DatasetError if the frame's unit has no assignment.
    Split split_of(const FrameEntry& f) const;
    std::vector<FrameEntry> frames_in(Split s) const;
};

/// Enumerates complete frames. Incomplete frames are skipped and noted in `warnings`.
/// Throws EmptyDataset, MixedLayout, or IoError if root is not a directory.
DatasetManifest load_dataset(const std::filesystem::path& root);

Stereopair load_frame(const FrameEntry& frame);
std::string frame_stem(int frame);

struct SplitRatios {
    double train = 0.75;
    double val = 0.125;
    double test = 0.125;
};

enum class SplitMode {
    /// Units ordered by a seeded hash of their id; exact largest-remainder quotas.
    Quota,
    /// Each unit placed by its own seeded hash alone; adding units never moves others.
    Hash,
};

SplitMode parse_split_mode(std::string_view token);

/// Throws InvalidArgument if ratios are negative or do not sum to 1 within 1e-9,
/// TooFewScenes if there are fewer units than non-zero ratios.
DatasetManifest split_dataset(DatasetManifest manifest, const SplitRatios& ratios, std::uint64_t seed,
                              SplitMode mode = SplitMode::Quota);

/// `unit = split` lines.
std::string serialize_split(const DatasetManifest& manifest);
/// Replaces the manifest's split with the file's assignments. Throws DatasetError if a
/// frame's unit is missing from the file.
void apply_split(DatasetManifest& manifest, std::string_view text);

}  // namespace stereocolor
