// Release gate: one PASS/FAIL line per acceptance criterion, tolerances pinned.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "stereocolor/color_space.hpp"
#include "stereocolor/distortion.hpp"
#include "stereocolor/global_transfer.hpp"
#include "stereocolor/idt.hpp"
#include "stereocolor/methods.hpp"
#include "stereocolor/metrics.hpp"
#include "stereocolor/png_io.hpp"
#include "stereocolor/stats.hpp"
#include "stereocolor/synthetic.hpp"
#include "support.hpp"

using namespace stereocolor;
using testing_support::TempDir;
namespace fs = std::filesystem;

namespace {

std::vector<std::string>& verdicts() {
    static std::vector<std::string> lines;
    return lines;
}

void verdict(const std::string& criterion, bool ok, const std::string& detail) {
    const std::string line = std::string(ok ? "PASS" : "FAIL") + "  " + criterion + "  " + detail;
    std::cout << line << std::endl;
    verdicts().push_back(line);
    EXPECT_TRUE(ok) << line;
}

class Summary : public ::testing::Environment {
public:
    void TearDown() override {
        std::cout << "\n== acceptance summary ==\n";
        for (const std::string& line : verdicts()) std::cout << line << "\n";
    }
};

const auto* const kSummary = ::testing::AddGlobalTestEnvironment(new Summary);

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd =
        std::string("\"") + STEREOCOLOR_CLI + "\" " + args + " >\"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

// Stereo-like pair: the left view is remixed and offset, the right view is the reference.
Stereopair mismatched_pair(int size, std::uint64_t seed) {
    Stereopair pair = make_stereo_scene(size, size, seed);
    const double s = 0.05 * static_cast<double>(seed % 5);
    const LinearColorMap mix{Mat3{{0.85 + s, 0.1, 0.0, 0.05, 0.9 - s, 0.1, 0.0, 0.15, 0.8 + s}}, {0.03, -0.02, 0.05}};
    pair.left = mix.apply_raw(pair.left);
    return pair;
}

}  // namespace

TEST(Acceptance, MomentMatching) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst_lab = 0.0, worst_mean = 0.0, worst_cov = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Stereopair pair = mismatched_pair(64, seed);
        const Image& target = pair.left;
        const Image& reference = pair.right;

        const ColorStats lab_out = compute_stats(fit_reinhard(target, reference).apply_raw(rgb_to_lab(target)));
        const ColorStats lab_ref = compute_stats(rgb_to_lab(reference));
        for (std::size_t c = 0; c < 3; ++c) {
            worst_lab = std::max(worst_lab, std::abs(lab_out.mean[c] - lab_ref.mean[c]));
            worst_lab = std::max(worst_lab, std::abs(lab_out.std[c] - lab_ref.std[c]));
        }

        const ColorStats ref = compute_stats(reference);
        std::vector<LinearColorMap> maps{fit_xiao(target, reference)};
        for (Decomposition d : {Decomposition::Cholesky, Decomposition::Sqrt, Decomposition::MongeKantorovitch})
            maps.push_back(fit_pitie_linear(target, reference, d));
        for (const LinearColorMap& map : maps) {
            const ColorStats out = compute_stats(apply_unclamped(map, target));
            for (std::size_t c = 0; c < 3; ++c) worst_mean = std::max(worst_mean, std::abs(out.mean[c] - ref.mean[c]));
            worst_cov = std::max(worst_cov, testing_support::relative_error(out.cov, ref.cov));
        }
    }
    const double elapsed = seconds_since(t0);
    const bool ok = worst_lab < 1e-3 && worst_mean < 1e-3 && worst_cov < 1e-2 && elapsed < 10.0;
    verdict("moment-matching", ok,
            "20 pairs 64x64; reinhard lab mean/std err " + fmt("%.2e", worst_lab) + " (<1e-3), linear mean err " +
                fmt("%.2e", worst_mean) + " (<1e-3), cov rel err " + fmt("%.2e", worst_cov) + " (<1e-2), " +
                fmt("%.2f", elapsed) + " s (<10)");
}

TEST(Acceptance, AffineRecovery) {
    const auto t0 = std::chrono::steady_clock::now();
    const Image reference = read_png(testing_support::data_path("natural_96.png"));
    const Vec3 gain{0.8, 0.9, 1.1};
    const Vec3 offset{0.05, 0.05, 0.05};
    const Image target = testing_support::per_channel_affine(reference, gain, offset);
    // Analytic inverse: (x - offset) / gain.
    Image inverse = target;
    for (std::size_t p = 0; p < inverse.pixel_count(); ++p) {
        Vec3 v = inverse.pixel(p);
        for (std::size_t c = 0; c < 3; ++c) v[c] = (v[c] - offset[c]) / gain[c];
        inverse.set_pixel(p, v);
    }
    const double oracle_err = max_abs_diff(inverse, reference);
    const double db = psnr(make_method("pitie-mk")(target, reference), reference);
    // As stored in a real image: the brightest red samples saturate at 1.
    Image saturated = target;
    for (double& v : saturated.data()) v = std::clamp(v, 0.0, 1.0);
    const double db_saturated = psnr(make_method("pitie-mk")(saturated, reference), reference);
    const double elapsed = seconds_since(t0);
    verdict("affine-recovery", db >= 40.0 && db_saturated >= 40.0 && oracle_err < 1e-12 && elapsed < 5.0,
            "gains (0.8,0.9,1.1) + 0.05; pitie-mk " + fmt("%.2f", db) + " dB unclipped, " + fmt("%.2f", db_saturated) +
                " dB clipped (>=40), " + fmt("%.3f", elapsed) + " s (<5)");
}

TEST(Acceptance, Idempotence) {
    MethodOptions options;
    options.idt.regrain = false;
    bool ok = true;
    std::string detail;
    for (const MethodInfo& info : registered_methods()) {
        const double tol = info.name == "pitie-idt" ? 0.02 : 1e-3;
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const Image x = make_stereo_scene(48, 48, 40 + seed).left;
            worst = std::max(worst, max_abs_diff(make_method(info.name, options)(x, x), x));
        }
        ok = ok && worst <= tol;
        detail += info.name + " " + fmt("%.1e", worst) + (tol < 0.01 ? " (<=1e-3) " : " (<=0.02) ");
    }
    verdict("idempotence", ok, detail);
}

TEST(Acceptance, IdtMarginalConvergence) {
    IdtConfig config;
    config.regrain = false;
    ASSERT_EQ(config.iterations, 20);
    const std::vector<Vec3> dense = testing_support::probe_axes(1234, 500);
    const std::vector<Vec3> fresh = testing_support::probe_axes(4321, 20);
    double worst_final = 0.0, worst_rise = -1.0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const Stereopair pair = make_stereo_scene(64, 64, 70 + seed);
        const Image target = apply_gamma(mismatched_pair(64, 70 + seed).left, 1.2);
        config.seed = seed;
        const testing_support::SlicedDistance tracked(pair.right, dense);
        std::vector<double> history{tracked(target)};
        const Image out = idt_transfer(target, pair.right, config,
                                       [&](int, const Image& current) { history.push_back(tracked(current)); });
        for (std::size_t i = 1; i < history.size(); ++i) worst_rise = std::max(worst_rise, history[i] - history[i - 1]);
        worst_final = std::max(worst_final, testing_support::SlicedDistance(pair.right, fresh)(out));
    }
    verdict("idt-marginal-convergence", worst_final <= 0.02 && worst_rise <= 1e-3,
            "3 pairs 64x64, 20 iterations; final W1 " + fmt("%.4f", worst_final) + " (<=0.02), worst rise " +
                fmt("%.1e", worst_rise) + " (<=1e-3, 500 fixed axes)");
}

TEST(Acceptance, SsimOracleEquivalence) {
    const Image a = read_png(testing_support::data_path("fixture_a.png"));
    const Image b = read_png(testing_support::data_path("fixture_b.png"));
    ASSERT_EQ(a.width(), 64);
    ASSERT_EQ(a.height(), 64);
    const double diff = std::max(std::abs(ssim(a, b) - testing_support::brute_force_ssim(a, b)),
                                 std::abs(ssim(b, a) - testing_support::brute_force_ssim(b, a)));
    const double self = std::max(std::abs(ssim(a, a) - 1.0), std::abs(ssim(b, b) - 1.0));
    verdict("ssim-oracle", diff <= 1e-6 && self <= 1e-9,
            "64x64 fixtures; |separable - brute| " + fmt("%.1e", diff) + " (<=1e-6), |ssim(a,a) - 1| " +
                fmt("%.1e", self) + " (<=1e-9)");
}

TEST(Acceptance, PsnrClosedForm) {
    const double db = psnr(Image(512, 512, 0.0), Image(512, 512, 0.1));
    verdict("psnr-closed-form", db == 20.0, "zeros vs 0.1 on 512x512 = " + fmt("%.17g", db) + " dB (exactly 20)");
}

TEST(Acceptance, TimingProtocol) {
    TempDir dir("accept_bench");
    const fs::path csv = dir.path() / "bench.csv";
    const int code = run_cli("bench --methods pitie-mk,pitie-idt --size 512 --repeats 3 --csv " + q(csv),
                             dir.path() / "log.txt");
    ASSERT_EQ(code, 0) << slurp(dir.path() / "log.txt");
    std::map<std::string, double> min_ms;
    bool protocol = true;
    for (const auto& row : read_csv(csv)) {
        if (row.empty() || row[0] == "method") continue;
        ASSERT_EQ(row.size(), 8u);
        const double m = std::stod(row[4]);
        const double lo = std::min({std::stod(row[5]), std::stod(row[6]), std::stod(row[7])});
        protocol = protocol && row[2] == "512" && row[3] == "3" && m == lo;
        min_ms[row[0]] = m;
    }
    ASSERT_EQ(min_ms.size(), 2u);
    const double ratio = min_ms["pitie-idt"] / min_ms["pitie-mk"];
    verdict("timing-protocol", protocol && ratio >= 3.0,
            "min-of-3 on 512x512; pitie-mk " + fmt("%.2f", min_ms["pitie-mk"]) + " ms, pitie-idt " +
                fmt("%.2f", min_ms["pitie-idt"]) + " ms, ratio " + fmt("%.1f", ratio) + " (>=3)");
}

TEST(Acceptance, DistortionDeterminism) {
    TempDir dir("accept_distort");
    testing_support::write_dataset(dir.path() / "pair", 2, 2, 48);
    for (const char* run : {"a", "b"})
        ASSERT_EQ(run_cli("distort --in " + q(dir.path() / "pair") + " --out " + q(dir.path() / run) +
                              " --ops bc,gamma,hsv --seed 17",
                          dir.path() / "log.txt"),
                  0);
    int files = 0, identical = 0;
    for (const auto& e : fs::recursive_directory_iterator(dir.path() / "a")) {
        if (!e.is_regular_file()) continue;
        ++files;
        identical += slurp(e.path()) == slurp(dir.path() / "b" / fs::relative(e.path(), dir.path() / "a"));
    }
    verdict("distortion-determinism", files == 16 && identical == files,
            std::to_string(identical) + "/" + std::to_string(files) + " output files byte-identical across two runs");
}

TEST(Acceptance, EndToEndBenchmark) {
    TempDir dir("accept_e2e");
    testing_support::write_dataset(dir.path() / "pair", 3, 1, 96);
    const fs::path cfg = dir.path() / "gamma.cfg";
    std::ofstream(cfg) << "distort.gamma_min = 1.2\ndistort.gamma_max = 1.2\n";
    const fs::path log = dir.path() / "log.txt";
    ASSERT_EQ(run_cli("distort --config " + q(cfg) + " --in " + q(dir.path() / "pair") + " --out " +
                          q(dir.path() / "triplet") + " --ops gamma --seed 1",
                      log),
              0)
        << slurp(log);
    const fs::path csv = dir.path() / "report.csv";
    // Three scenes: every scene goes to TEST so the report covers the whole fixture.
    ASSERT_EQ(run_cli("evaluate --data " + q(dir.path() / "triplet") + " --ratios 0,0,1 --no-timing --csv " + q(csv),
                      log),
              0)
        << slurp(log);
    double best = 0.0;
    std::string best_method;
    int frames = 0;
    for (const auto& row : read_csv(csv)) {
        if (row.empty() || row[0] == "method" || row[1] != "Global") continue;
        frames = std::stoi(row[3]);
        const double db = std::stod(row[5]);
        if (db > best) best = db, best_method = row[0];
    }
    verdict("end-to-end-benchmark", frames == 3 && best > 30.0,
            "3-scene TRIPLET, gamma 1.2; best global " + best_method + " " + fmt("%.2f", best) + " dB (>30)");
}
