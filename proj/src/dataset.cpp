#include "stereocolor/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <regex>
#include <sstream>

#include "stereocolor/config.hpp"
#include "stereocolor/errors.hpp"
#include "stereocolor/png_io.hpp"
#include "stereocolor/rng.hpp"

namespace fs = std::filesystem;

namespace stereocolor {

std::string_view to_string(Layout layout) { return layout == Layout::Triplet ? "triplet" : "pair"; }

std::string_view to_string(Split split) {
    switch (split) {
        case Split::Train:
            return "train";
        case Split::Val:
            return "val";
        case Split::Test:
            return "test";
    }
    return "unknown";
}

Split parse_split(std::string_view token) {
    if (token == "train") return Split::Train;
    if (token == "val") return Split::Val;
    if (token == "test") return Split::Test;
    throw InvalidArgument("unknown split '" + std::string(token) + "'");
}

SplitMode parse_split_mode(std::string_view token) {
    if (token == "quota") return SplitMode::Quota;
    if (token == "hash") return SplitMode::Hash;
    throw InvalidArgument("unknown split mode '" + std::string(token) + "' (expected quota or hash)");
}

std::string frame_stem(int frame) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d", frame);
    return buf;
}

std::string FrameEntry::id() const { return scene + "/" + frame_stem(frame); }

std::string DatasetManifest::split_unit(const FrameEntry& f) const {
    return layout == Layout::Triplet ? f.scene : f.id();
}

Split DatasetManifest::split_of(const FrameEntry& f) const {
    const auto it = split.find(split_unit(f));
    if (it == split.end()) throw DatasetError("frame " + f.id() + " has no split assignment");
    return it->second;
}

std::vector<FrameEntry> DatasetManifest::frames_in(Split s) const {
    std::vector<FrameEntry> out;
    for (const FrameEntry& f : frames)
        if (split_of(f) == s) out.push_back(f);
    return out;
}

DatasetManifest load_dataset(const fs::path& root) {
    if (!fs::is_directory(root)) throw IoError("dataset root " + root.string() + " is not a directory");
    static const std::regex name_re(R"(^(\d{4,})_(left|left_gt|right)\.png$)");

    std::vector<fs::path> scene_dirs;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) scene_dirs.push_back(entry.path());
    std::sort(scene_dirs.begin(), scene_dirs.end());

    DatasetManifest manifest;
    manifest.root = root;
    std::optional<Layout> layout;
    std::string layout_scene;

    for (const fs::path& dir : scene_dirs) {
        struct Files {
            std::optional<fs::path> left, left_gt, right;
        };
        std::map<int, Files> by_frame;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (!entry.is_regular_file()) continue;
            const std::string name = entry.path().filename().string();
            std::smatch m;
            if (!std::regex_match(name, m, name_re)) continue;
            Files& files = by_frame[std::stoi(m[1].str())];
            const std::string role = m[2].str();
            if (role == "left")
                files.left = entry.path();
            else if (role == "left_gt")
                files.left_gt = entry.path();
            else
                files.right = entry.path();
        }
        if (by_frame.empty()) continue;

        const std::string scene = dir.filename().string();
        const bool has_gt = std::any_of(by_frame.begin(), by_frame.end(), [](const auto& kv) { return kv.second.left_gt.has_value(); });
        const Layout scene_layout = has_gt ? Layout::Triplet : Layout::Pair;
        if (layout && *layout != scene_layout)
            throw MixedLayout("scene '" + scene + "' is " + std::string(to_string(scene_layout)) + " but scene '" +
                              layout_scene + "' is " + std::string(to_string(*layout)));
        if (!layout) {
            layout = scene_layout;
            layout_scene = scene;
        }

        SceneInfo info{scene, 0};
        for (const auto& [frame, files] : by_frame) {
            std::vector<std::string> missing;
            if (!files.left) missing.push_back("left");
            if (scene_layout == Layout::Triplet && !files.left_gt) missing.push_back("left_gt");
            if (!files.right) missing.push_back("right");
            if (!missing.empty()) {
                std::string what;
                for (const auto& m : missing) what += (what.empty() ? "" : ", ") + m + ".png";
                manifest.warnings.push_back("skipping incomplete frame " + scene + "/" + frame_stem(frame) + ": missing " + what);
                continue;
            }
            manifest.frames.push_back({scene, frame, *files.left, *files.right, files.left_gt});
            ++info.frame_count;
        }
        if (info.frame_count > 0) manifest.scenes.push_back(info);
    }
    if (manifest.frames.empty()) throw EmptyDataset("no complete frames under " + root.string());
    manifest.layout = *layout;
    return manifest;
}

Stereopair load_frame(const FrameEntry& frame) {
    Stereopair pair;
    pair.left = read_png(frame.left);
    pair.right = read_png(frame.right);
    if (frame.left_gt) pair.gt_left = read_png(*frame.left_gt);
    pair.validate();
    return pair;
}

DatasetManifest split_dataset(DatasetManifest manifest, const SplitRatios& ratios, std::uint64_t seed, SplitMode mode) {
    const std::array<double, 3> r{ratios.train, ratios.val, ratios.test};
    if (std::any_of(r.begin(), r.end(), [](double v) { return !(v >= 0.0); }))
        throw InvalidArgument("split ratios must be non-negative");
    if (std::abs(r[0] + r[1] + r[2] - 1.0) > 1e-9) throw InvalidArgument("split ratios must sum to 1");

    std::vector<std::string> units;
    for (const FrameEntry& f : manifest.frames) {
        std::string u = manifest.split_unit(f);
        if (units.empty() || units.back() != u) units.push_back(std::move(u));
    }
    const auto nonzero = static_cast<std::size_t>(std::count_if(r.begin(), r.end(), [](double v) { return v > 0.0; }));
    if (units.size() < nonzero)
        throw TooFewScenes("need at least " + std::to_string(nonzero) + " split units, have " + std::to_string(units.size()));

    const auto key = [seed](const std::string& unit) { return mix64(seed, fnv1a(unit)); };
    constexpr std::array<Split, 3> order{Split::Train, Split::Val, Split::Test};
    manifest.split.clear();

    if (mode == SplitMode::Hash) {
        for (const std::string& u : units) {
            const double x = static_cast<double>(key(u) >> 11) * 0x1.0p-53;
            Split s = Split::Test;
            if (x < r[0])
                s = Split::Train;
            else if (x < r[0] + r[1])
                s = Split::Val;
            if (r[static_cast<std::size_t>(s)] == 0.0) s = r[2] > 0.0 ? Split::Test : (r[1] > 0.0 ? Split::Val : Split::Train);
            manifest.split[u] = s;
        }
        return manifest;
    }

    // largest remainder quotas
    const double n = static_cast<double>(units.size());
    std::array<std::size_t, 3> quota{};
    std::array<double, 3> remainder{};
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double exact = r[i] * n;
        quota[i] = static_cast<std::size_t>(std::floor(exact + 1e-9));
        remainder[i] = exact - static_cast<double>(quota[i]);
        assigned += quota[i];
    }
    std::array<std::size_t, 3> idx{0, 1, 2};
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t k = 0; assigned < units.size(); k = (k + 1) % 3) {
        if (r[idx[k]] > 0.0) {
            ++quota[idx[k]];
            ++assigned;
        }
    }

    std::sort(units.begin(), units.end(), [&](const std::string& a, const std::string& b) {
        const auto ka = key(a), kb = key(b);
        return ka != kb ? ka < kb : a < b;
    });
    std::size_t pos = 0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t c = 0; c < quota[i]; ++c) manifest.split[units[pos++]] = order[i];
    return manifest;
}

std::string serialize_split(const DatasetManifest& manifest) {
    std::ostringstream out;
    out << "# layout = " << to_string(manifest.layout) << "\n";
    for (const auto& [unit, split] : manifest.split) out << unit << " = " << to_string(split) << "\n";
    return out.str();
}

void apply_split(DatasetManifest& manifest, std::string_view text) {
    const Config parsed = Config::parse(text);
    std::map<std::string, Split> split;
    for (const auto& [unit, value] : parsed.values()) split[unit] = parse_split(value);
    for (const FrameEntry& f : manifest.frames)
        if (!split.count(manifest.split_unit(f)))
            throw DatasetError("split file has no entry for " + manifest.split_unit(f));
    manifest.split = std::move(split);
}

}  // namespace stereocolor
