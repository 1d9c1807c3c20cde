#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "fixtures.hpp"
#include "stereocolor/config.hpp"
#include "stereocolor/dataset.hpp"
#include "stereocolor/distortion.hpp"
#include "stereocolor/errors.hpp"
#include "stereocolor/global_transfer.hpp"
#include "stereocolor/harness.hpp"
#include "stereocolor/methods.hpp"

using namespace stereocolor;
using testing_support::TempDir;
using testing_support::write_dataset;

namespace {

// In-memory manifest with `scenes` TRIPLET scenes of `frames` frames each.
DatasetManifest synthetic_manifest(int scenes, int frames, Layout layout = Layout::Triplet) {
    DatasetManifest m;
    m.layout = layout;
    for (int s = 0; s < scenes; ++s) {
        const std::string id = "s" + std::to_string(1000 + s);
        m.scenes.push_back({id, frames});
        for (int f = 0; f < frames; ++f) {
            FrameEntry e;
            e.scene = id;
            e.frame = f;
            m.frames.push_back(e);
        }
    }
    return m;
}

std::map<Split, int> count_units(const DatasetManifest& m) {
    std::map<Split, int> n;
    for (const auto& [unit, s] : m.split) ++n[s];
    return n;
}

Image gamma_12(const Image& img) { return apply_gamma(img, 1.2); }

}  // namespace

TEST(Config, ParsesFlatKeyValues) {
    const Config c = Config::parse("# comment\n[ignored]\nidt.bins = 128\n  split.ratios=0.5, 0.25,0.25 \nbench.timing = false\n");
    EXPECT_EQ(c.get_int("idt.bins", 0), 128);
    EXPECT_EQ(c.get_doubles("split.ratios", {}), (std::vector<double>{0.5, 0.25, 0.25}));
    EXPECT_FALSE(c.get_bool("bench.timing", true));
    EXPECT_EQ(c.get_double("missing", 2.5), 2.5);
    EXPECT_THROW(Config::parse("idt.bins = 12x").get_int("idt.bins", 0), InvalidArgument);
    EXPECT_THROW(Config::load("/nonexistent/config.txt"), IoError);
}

TEST(LoadDataset, EnumeratesTripletFrames) {
    TempDir dir("load");
    write_dataset(dir.path(), 2, 3, 16, gamma_12);
    const DatasetManifest m = load_dataset(dir.path());
    EXPECT_EQ(m.layout, Layout::Triplet);
    EXPECT_EQ(m.frames.size(), 6u);
    ASSERT_EQ(m.scenes.size(), 2u);
    EXPECT_EQ(m.scenes[0].frame_count, 3);
    EXPECT_TRUE(m.warnings.empty());
    EXPECT_EQ(m.frames[4].id(), "scene_01/0001");
    const Stereopair p = load_frame(m.frames[0]);
    EXPECT_TRUE(p.gt_left.has_value());
    EXPECT_EQ(p.left.width(), 16);
}

TEST(LoadDataset, PairLayout) {
    TempDir dir("pair");
    write_dataset(dir.path(), 1, 2, 12);
    const DatasetManifest m = load_dataset(dir.path());
    EXPECT_EQ(m.layout, Layout::Pair);
    EXPECT_EQ(m.frames.size(), 2u);
    EXPECT_FALSE(m.frames[0].left_gt.has_value());
}

TEST(LoadDataset, IncompleteFrameIsSkippedWithWarning) {
    TempDir dir("incomplete");
    write_dataset(dir.path(), 2, 3, 12, gamma_12);
    std::filesystem::remove(dir.path() / "scene_00" / "0001_right.png");
    const DatasetManifest m = load_dataset(dir.path());
    EXPECT_EQ(m.frames.size(), 5u);
    ASSERT_EQ(m.warnings.size(), 1u);
    EXPECT_NE(m.warnings[0].find("scene_00/0001"), std::string::npos);
    for (const FrameEntry& f : m.frames) EXPECT_NE(f.id(), "scene_00/0001");
}

TEST(LoadDataset, Errors) {
    TempDir dir("errors");
    EXPECT_THROW(load_dataset(dir.path()), EmptyDataset);
    EXPECT_THROW(load_dataset(dir.path() / "nope"), IoError);
    write_dataset(dir.path() / "mixed", 2, 1, 12, gamma_12);
    std::filesystem::remove(dir.path() / "mixed" / "scene_01" / "0000_left_gt.png");
    EXPECT_THROW(load_dataset(dir.path() / "mixed"), MixedLayout);
}

TEST(SplitDataset, TwentyFourScenesGiveEighteenThreeThree) {
    const DatasetManifest m = split_dataset(synthetic_manifest(24, 50), {}, 0);
    const auto n = count_units(m);
    EXPECT_EQ(n.at(Split::Train), 18);
    EXPECT_EQ(n.at(Split::Val), 3);
    EXPECT_EQ(n.at(Split::Test), 3);
    EXPECT_EQ(m.frames_in(Split::Train).size(), 900u);
    EXPECT_EQ(m.frames_in(Split::Val).size(), 150u);
    EXPECT_EQ(m.frames_in(Split::Test).size(), 150u);
}

TEST(SplitDataset, DeterministicAndSeedDependent) {
    const DatasetManifest base = synthetic_manifest(24, 2);
    EXPECT_EQ(split_dataset(base, {}, 7).split, split_dataset(base, {}, 7).split);
    EXPECT_NE(split_dataset(base, {}, 7).split, split_dataset(base, {}, 8).split);
}

TEST(SplitDataset, AllTrain) {
    const DatasetManifest m = split_dataset(synthetic_manifest(5, 2), {1.0, 0.0, 0.0}, 3);
    EXPECT_EQ(m.frames_in(Split::Train).size(), 10u);
    for (SplitMode mode : {SplitMode::Quota, SplitMode::Hash})
        for (const auto& [unit, s] : split_dataset(synthetic_manifest(5, 2), {1.0, 0.0, 0.0}, 3, mode).split)
            EXPECT_EQ(s, Split::Train);
}

TEST(SplitDataset, PartitionIsDisjointAndExhaustive) {
    for (SplitMode mode : {SplitMode::Quota, SplitMode::Hash}) {
        const DatasetManifest m = split_dataset(synthetic_manifest(13, 4), {0.6, 0.2, 0.2}, 1, mode);
        std::set<std::string> seen;
        std::size_t total = 0;
        for (Split s : {Split::Train, Split::Val, Split::Test})
            for (const FrameEntry& f : m.frames_in(s)) {
                EXPECT_TRUE(seen.insert(f.id()).second);
                ++total;
            }
        EXPECT_EQ(total, m.frames.size());
        // TRIPLET: every frame of a scene shares its split
        for (const FrameEntry& f : m.frames) EXPECT_EQ(m.split_of(f), m.split.at(f.scene));
    }
}

TEST(SplitDataset, PairLayoutSplitsFrames) {
    const DatasetManifest m = split_dataset(synthetic_manifest(1, 8, Layout::Pair), {0.75, 0.125, 0.125}, 0);
    EXPECT_EQ(m.split.size(), 8u);
    EXPECT_EQ(m.frames_in(Split::Train).size(), 6u);
    EXPECT_EQ(m.frames_in(Split::Test).size(), 1u);
}

TEST(SplitDataset, HashModeIsStableUnderAddedScenes) {
    const DatasetManifest small = split_dataset(synthetic_manifest(20, 1), {}, 11, SplitMode::Hash);
    const DatasetManifest large = split_dataset(synthetic_manifest(40, 1), {}, 11, SplitMode::Hash);
    for (const auto& [unit, s] : small.split) EXPECT_EQ(large.split.at(unit), s) << unit;
}

TEST(SplitDataset, Errors) {
    EXPECT_THROW(split_dataset(synthetic_manifest(4, 1), {0.5, 0.5, 0.5}, 0), InvalidArgument);
    EXPECT_THROW(split_dataset(synthetic_manifest(4, 1), {1.2, -0.1, -0.1}, 0), InvalidArgument);
    EXPECT_THROW(split_dataset(synthetic_manifest(2, 5), {}, 0), TooFewScenes);
}

TEST(SplitFile, RoundTrip) {
    const DatasetManifest m = split_dataset(synthetic_manifest(9, 2), {}, 5);
    DatasetManifest other = synthetic_manifest(9, 2);
    apply_split(other, serialize_split(m));
    EXPECT_EQ(other.split, m.split);
    DatasetManifest bigger = synthetic_manifest(10, 2);
    EXPECT_THROW(apply_split(bigger, serialize_split(m)), DatasetError);
}

TEST(Methods, RegistryNamesRoundTrip) {
    const std::vector<std::string> expected{"reinhard", "xiao", "pitie-cholesky", "pitie-sqrt", "pitie-mk", "pitie-idt"};
    ASSERT_EQ(registered_methods().size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_EQ(registered_methods()[i].name, expected[i]);
        EXPECT_EQ(method_info(expected[i]).name, expected[i]);
    }
    EXPECT_EQ(method_info("pitie-idt").type, MethodType::Local);
    EXPECT_EQ(method_info("xiao").type, MethodType::Global);
    EXPECT_THROW(method_info("neural"), InvalidArgument);
    EXPECT_EQ(parse_method_list("reinhard,pitie-mk"), (std::vector<std::string>{"reinhard", "pitie-mk"}));
    EXPECT_THROW(parse_method_list("reinhard,bogus"), InvalidArgument);
}

TEST(RunBenchmark, OneRowAveragedOverTestFrames) {
    TempDir dir("bench_one");
    write_dataset(dir.path(), 1, 3, 24, gamma_12);
    const DatasetManifest m = split_dataset(load_dataset(dir.path()), {0.0, 0.0, 1.0}, 0);
    BenchmarkConfig config;
    config.timing = false;
    config.dataset_name = "fixture";
    const EvaluationReport report = run_benchmark(m, {"reinhard"}, config);
    ASSERT_EQ(report.rows.size(), 1u);
    const EvaluationRow& row = report.rows[0];
    EXPECT_EQ(row.frames, 3);
    EXPECT_EQ(row.failed, 0);
    EXPECT_FALSE(row.time_ms.has_value());
    ASSERT_EQ(report.frame_results.size(), 3u);
    double sum = 0.0;
    for (const FrameResult& f : report.frame_results) sum += f.psnr_db;
    EXPECT_NEAR(row.psnr_mean, sum / 3.0, 1e-12);
}

TEST(RunBenchmark, IdentityDistortionKeepsIdempotentMethodsAbove50dB) {
    TempDir dir("bench_identity");
    write_dataset(dir.path(), 2, 2, 32, [](const Image& img) { return img; });
    // Left and right must coincide for idempotence to apply; make the right view the gt.
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir.path())) {
        const std::string name = entry.path().filename().string();
        if (name.ends_with("_left_gt.png")) {
            const std::string stem = name.substr(0, name.size() - std::string("_left_gt.png").size());
            std::filesystem::copy_file(entry.path(), entry.path().parent_path() / (stem + "_right.png"),
                                       std::filesystem::copy_options::overwrite_existing);
        }
    }
    const DatasetManifest m = split_dataset(load_dataset(dir.path()), {0.0, 0.0, 1.0}, 0);
    BenchmarkConfig config;
    config.timing = false;
    config.options.idt.regrain = false;
    const EvaluationReport report =
        run_benchmark(m, {"reinhard", "xiao", "pitie-cholesky", "pitie-sqrt", "pitie-mk"}, config);
    for (const EvaluationRow& row : report.rows) EXPECT_GE(row.psnr_mean, 50.0) << row.method;
}

TEST(RunBenchmark, FullAffineFavoursCovarianceFitting) {
    TempDir dir("bench_affine");
    const LinearColorMap mix{Mat3{{0.8, 0.15, 0.0, 0.05, 0.85, 0.1, 0.0, 0.2, 0.75}}, {0.04, 0.02, 0.06}};
    write_dataset(dir.path(), 2, 2, 48, [&](const Image& img) { return clamped(mix.apply_raw(img)); });
    const DatasetManifest m = split_dataset(load_dataset(dir.path()), {0.0, 0.0, 1.0}, 0);
    BenchmarkConfig config;
    config.timing = false;
    const EvaluationReport report = run_benchmark(m, {"reinhard", "pitie-mk"}, config);
    ASSERT_EQ(report.rows.size(), 2u);
    EXPECT_GE(report.rows[1].psnr_mean, report.rows[0].psnr_mean);
}

TEST(RunBenchmark, FailuresAreCountedPerFrame) {
    TempDir dir("bench_fail");
    // Constant distorted left views have singular covariance.
    write_dataset(dir.path(), 1, 2, 16, [](const Image& img) { return Image(img.width(), img.height(), 0.4); });
    const DatasetManifest m = split_dataset(load_dataset(dir.path()), {0.0, 0.0, 1.0}, 0);
    BenchmarkConfig config;
    config.timing = false;
    const EvaluationReport report = run_benchmark(m, {"pitie-mk", "reinhard"}, config);
    EXPECT_EQ(report.rows[0].failed, 2);
    EXPECT_EQ(report.rows[0].frames, 0);
    EXPECT_EQ(report.rows[1].failed, 0);
    EXPECT_FALSE(report.frame_results[0].ok());
    EXPECT_NE(report.to_markdown().find("| pitie-mk"), std::string::npos);
}

TEST(RunBenchmark, ReportIsDeterministicApartFromTiming) {
    TempDir dir("bench_det");
    write_dataset(dir.path(), 3, 2, 24, gamma_12);
    const DatasetManifest m = split_dataset(load_dataset(dir.path()), {0.34, 0.0, 0.66}, 3);
    BenchmarkConfig config;
    config.probe_size = 32;
    const std::vector<std::string> methods{"reinhard", "pitie-mk", "pitie-idt"};
    const EvaluationReport a = run_benchmark(m, methods, config);
    const EvaluationReport b = run_benchmark(m, methods, config);
    EXPECT_EQ(a.to_csv(false), b.to_csv(false));
    for (const EvaluationRow& row : a.rows) {
        ASSERT_TRUE(row.time_ms.has_value());
        EXPECT_GT(*row.time_ms, 0.0);
    }
    const std::string csv = a.to_csv(true);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "method,type,dataset,frames,failed,time_ms,psnr_db,ssim");
}

TEST(RunBenchmark, RequiresTripletAndTestFrames) {
    TempDir dir("bench_pre");
    write_dataset(dir.path() / "pair", 1, 2, 12);
    const DatasetManifest pair = split_dataset(load_dataset(dir.path() / "pair"), {0.0, 0.0, 1.0}, 0);
    EXPECT_THROW(run_benchmark(pair, {"reinhard"}), DatasetError);
    write_dataset(dir.path() / "triplet", 2, 1, 12, gamma_12);
    const DatasetManifest train_only = split_dataset(load_dataset(dir.path() / "triplet"), {1.0, 0.0, 0.0}, 0);
    EXPECT_THROW(run_benchmark(train_only, {"reinhard"}), DatasetError);
}

TEST(Report, MarkdownPivotsDatasets) {
    EvaluationReport r;
    r.rows.push_back({"reinhard", MethodType::Global, "A", 3, 0, 12.0, 25.5, 0.9});
    r.rows.push_back({"reinhard", MethodType::Global, "B", 3, 0, 11.0, 27.25, 0.95});
    r.rows.push_back({"pitie-idt", MethodType::Local, "A", 3, 0, 900.0, 30.0, 0.97});
    const std::string md = r.to_markdown();
    EXPECT_NE(md.find("A PSNR"), std::string::npos);
    EXPECT_NE(md.find("B SSIM"), std::string::npos);
    EXPECT_NE(md.find("27.2500"), std::string::npos);
    EXPECT_EQ(std::count(md.begin(), md.end(), '\n'), 4);
    EXPECT_EQ(format_fixed(std::numeric_limits<double>::infinity(), 2), "inf");
}
