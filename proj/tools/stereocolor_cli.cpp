// stereocolor: synthesize, correct and score stereo color mismatches.
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 method error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stereocolor/config.hpp"
#include "stereocolor/dataset.hpp"
#include "stereocolor/distortion.hpp"
#include "stereocolor/errors.hpp"
#include "stereocolor/harness.hpp"
#include "stereocolor/kernels.hpp"
#include "stereocolor/methods.hpp"
#include "stereocolor/png_io.hpp"
#include "stereocolor/rng.hpp"
#include "stereocolor/synthetic.hpp"

namespace fs = std::filesystem;
using namespace stereocolor;

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kMethod = 3 };

/// A method failed on its input (as opposed to bad data or bad flags).
struct MethodFailure : Error {
    using Error::Error;
};

/// Options shared by the subcommands that run corrections.
struct MethodFlags {
    std::string config_path;
    std::optional<int> idt_iterations;
    std::optional<int> idt_bins;
    std::optional<std::uint64_t> seed;
    bool no_regrain = false;
    std::optional<double> regrain_strength;
};

void add_method_flags(CLI::App* cmd, MethodFlags& f) {
    cmd->add_option("--config", f.config_path, "key = value settings file; flags override it");
    cmd->add_option("--idt-iterations", f.idt_iterations, "IDT iterations (default 20)");
    cmd->add_option("--idt-bins", f.idt_bins, "IDT histogram bins (default 300)");
    cmd->add_option("--seed", f.seed, "seed for IDT rotations and splits");
    cmd->add_flag("--no-regrain", f.no_regrain, "skip the IDT grain-suppression pass");
    cmd->add_option("--regrain-strength", f.regrain_strength, "regrain strength (default 1.0)");
}

Config load_config(const std::string& path) { return path.empty() ? Config{} : Config::load(path); }

MethodOptions method_options(const MethodFlags& f, const Config& config) {
    MethodOptions o;
    o.idt.iterations = static_cast<int>(config.get_int("idt.iterations", o.idt.iterations));
    o.idt.bins = static_cast<int>(config.get_int("idt.bins", o.idt.bins));
    o.idt.seed = static_cast<std::uint64_t>(config.get_int("idt.seed", 0));
    o.idt.regrain = config.get_bool("idt.regrain", o.idt.regrain);
    o.idt.regrain_strength = config.get_double("idt.regrain_strength", o.idt.regrain_strength);
    if (f.idt_iterations) o.idt.iterations = *f.idt_iterations;
    if (f.idt_bins) o.idt.bins = *f.idt_bins;
    if (f.seed) o.idt.seed = *f.seed;
    if (f.no_regrain) o.idt.regrain = false;
    if (f.regrain_strength) o.idt.regrain_strength = *f.regrain_strength;
    o.idt.validate();
    return o;
}

SplitRatios parse_ratios(const std::vector<double>& v) {
    if (v.size() != 3) throw InvalidArgument("ratios need three values: train,val,test");
    return {v[0], v[1], v[2]};
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".partial";
    {
        std::ofstream out(tmp, std::ios::binary);
        out << text;
        if (!out) throw IoError("cannot write " + path.string());
    }
    fs::rename(tmp, path);
}

void copy_bytes(const fs::path& from, const fs::path& to) {
    fs::copy_file(from, to, fs::copy_options::overwrite_existing);
}

// --- distort -----------------------------------------------------------------

struct DistortArgs {
    std::string in;
    std::string out;
    std::string ops;
    std::optional<std::uint64_t> seed;
    std::string config_path;
};

int run_distort(const DistortArgs& a) {
    const Config config = load_config(a.config_path);
    const DistortionRanges ranges = DistortionRanges::from_config(config);
    const std::string ops_text = a.ops.empty() ? config.get_string("distort.ops", "bc,gamma,hsv") : a.ops;
    std::vector<DistortionOp> ops;
    for (const std::string& token : split(ops_text, ','))
        if (!token.empty()) ops.push_back(parse_distortion_op(token));
    if (ops.empty()) throw InvalidArgument("--ops lists no distortions");
    const std::uint64_t seed = a.seed ? *a.seed : static_cast<std::uint64_t>(config.get_int("distort.seed", 0));

    const DatasetManifest manifest = load_dataset(a.in);
    if (manifest.layout != Layout::Pair) throw DatasetError("distort expects a PAIR dataset (left/right only)");
    for (const std::string& w : manifest.warnings) std::cerr << "warning: " << w << "\n";

    const fs::path out_root(a.out);
    for (const FrameEntry& f : manifest.frames) {
        std::vector<DistortionSpec> chain;
        for (DistortionOp op : ops)
            chain.push_back(sample_spec(op, mix64(seed, fnv1a(f.id() + "/" + std::string(to_string(op)))), ranges));
        const Stereopair pair{read_png(f.left), read_png(f.right), std::nullopt};
        const Stereopair out = synthesize(pair, chain);
        const fs::path dir = out_root / f.scene;
        fs::create_directories(dir);
        const std::string stem = frame_stem(f.frame);
        write_png(dir / (stem + "_left.png"), out.left);
        copy_bytes(f.left, dir / (stem + "_left_gt.png"));
        copy_bytes(f.right, dir / (stem + "_right.png"));
        write_text(dir / (stem + "_distortion.txt"), serialize_specs(chain));
    }
    std::cout << "distorted " << manifest.frames.size() << " frames into " << out_root.string() << "\n";
    return kOk;
}

// --- correct -----------------------------------------------------------------

struct CorrectArgs {
    std::string left;
    std::string right;
    std::string method = "pitie-mk";
    std::string out;
    MethodFlags flags;
};

int run_correct(const CorrectArgs& a) {
    const Config config = load_config(a.flags.config_path);
    const CorrectionFn method = make_method(a.method, method_options(a.flags, config));
    const Image left = read_png(a.left);
    const Image right = read_png(a.right);
    Image corrected;
    try {
        corrected = method(left, right);
    } catch (const Error& e) {
        throw MethodFailure(a.method + ": " + e.what());
    }
    write_png(a.out, corrected);
    std::cout << a.out << " " << corrected.width() << "x" << corrected.height() << "\n";
    return kOk;
}

// --- evaluate ----------------------------------------------------------------

struct EvaluateArgs {
    std::vector<std::string> data;
    std::vector<std::string> names;
    std::string methods;
    std::vector<double> ratios;
    std::string split_mode;
    std::string split_file;
    std::string csv;
    std::string markdown;
    bool no_timing = false;
    std::optional<int> probe_size;
    MethodFlags flags;
};

DatasetManifest prepare_split(const std::string& root, const Config& config, const std::vector<double>& ratios_flag,
                              const std::optional<std::uint64_t>& seed_flag, const std::string& mode_flag,
                              const std::string& split_file) {
    DatasetManifest m = load_dataset(root);
    for (const std::string& w : m.warnings) std::cerr << "warning: " << w << "\n";
    if (!split_file.empty()) {
        std::ifstream in(split_file);
        if (!in) throw IoError("cannot read split file " + split_file);
        std::stringstream text;
        text << in.rdbuf();
        apply_split(m, text.str());
        return m;
    }
    const SplitRatios ratios =
        parse_ratios(ratios_flag.empty() ? config.get_doubles("split.ratios", {0.75, 0.125, 0.125}) : ratios_flag);
    const std::uint64_t seed = seed_flag ? *seed_flag : static_cast<std::uint64_t>(config.get_int("split.seed", 0));
    const SplitMode mode = parse_split_mode(mode_flag.empty() ? config.get_string("split.mode", "quota") : mode_flag);
    return split_dataset(std::move(m), ratios, seed, mode);
}

int run_evaluate(const EvaluateArgs& a) {
    const Config config = load_config(a.flags.config_path);
    const std::vector<std::string> methods =
        parse_method_list(a.methods.empty() ? config.get_string("bench.methods", "reinhard,xiao,pitie-mk,pitie-idt")
                                            : a.methods);
    if (!a.names.empty() && a.names.size() != a.data.size())
        throw InvalidArgument("--name must be given once per --data directory");

    BenchmarkConfig bench;
    bench.options = method_options(a.flags, config);
    bench.timing = !a.no_timing && config.get_bool("bench.timing", true);
    bench.timing_repeats = static_cast<int>(config.get_int("bench.repeats", 3));
    bench.warmup = config.get_bool("bench.warmup", false);
    bench.probe_size = a.probe_size ? *a.probe_size : static_cast<int>(config.get_int("bench.probe_size", 512));

    EvaluationReport report;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const DatasetManifest m = prepare_split(a.data[i], config, a.ratios, a.flags.seed, a.split_mode, a.split_file);
        bench.dataset_name = a.names.empty() ? fs::path(a.data[i]).lexically_normal().filename().string() : a.names[i];
        if (bench.dataset_name.empty()) bench.dataset_name = "dataset";
        const EvaluationReport part = run_benchmark(m, methods, bench);
        for (const FrameResult& f : part.frame_results) {
            if (f.ok())
                std::cout << bench.dataset_name << " " << f.method << " " << f.frame_id << " psnr=" << format_fixed(f.psnr_db, 4)
                          << " ssim=" << format_fixed(f.ssim, 6) << "\n";
            else
                std::cout << bench.dataset_name << " " << f.method << " " << f.frame_id << " FAILED: " << f.error << "\n";
        }
        report.append(part);
    }
    std::cout << "\n" << report.to_markdown();
    if (!a.csv.empty()) write_text(a.csv, report.to_csv(bench.timing));
    if (!a.markdown.empty()) write_text(a.markdown, report.to_markdown());

    int failed = 0;
    for (const EvaluationRow& r : report.rows) failed += r.failed;
    return failed > 0 ? kMethod : kOk;
}

// --- bench -------------------------------------------------------------------

struct BenchArgs {
    std::string methods;
    std::string left;
    std::string right;
    std::optional<int> size;
    std::optional<int> repeats;
    bool warmup = false;
    std::string csv;
    MethodFlags flags;
};

int run_bench(const BenchArgs& a) {
    const Config config = load_config(a.flags.config_path);
    const std::vector<std::string> methods = parse_method_list(
        a.methods.empty() ? config.get_string("bench.methods", "reinhard,xiao,pitie-cholesky,pitie-sqrt,pitie-mk,pitie-idt")
                          : a.methods);
    const MethodOptions options = method_options(a.flags, config);
    const int size = a.size ? *a.size : static_cast<int>(config.get_int("bench.probe_size", 512));
    const int repeats = a.repeats ? *a.repeats : static_cast<int>(config.get_int("bench.repeats", 3));
    const bool warmup = a.warmup || config.get_bool("bench.warmup", false);
    if (size < 16) throw InvalidArgument("--size must be at least 16");
    if (repeats < 1) throw InvalidArgument("--repeats must be at least 1");
    if (a.left.empty() != a.right.empty()) throw InvalidArgument("--left and --right go together");

    Stereopair probe;
    if (!a.left.empty()) {
        probe.left = make_probe(read_png(a.left), size);
        probe.right = make_probe(read_png(a.right), size);
    } else {
        probe = make_stereo_scene(size, size, 0);
        probe.left = apply_gamma(probe.left, 1.2);
    }

    std::ostringstream csv;
    csv << "method,type,size,repeats,min_ms";
    for (int i = 0; i < repeats; ++i) csv << ",run" << i + 1 << "_ms";
    csv << "\n";
    std::printf("%-16s %-7s %12s   runs (ms)\n", "method", "type", "min ms");
    for (const std::string& name : methods) {
        const MethodInfo& info = method_info(name);
        TimingResult t;
        try {
            t = time_method(make_method(name, options), probe, repeats, warmup);
        } catch (const Error& e) {
            throw MethodFailure(name + ": " + e.what());
        }
        std::printf("%-16s %-7s %12.3f  ", info.name.c_str(), std::string(to_string(info.type)).c_str(), t.min_ms);
        csv << info.name << ',' << to_string(info.type) << ',' << size << ',' << repeats << ','
            << format_fixed(t.min_ms, 3);
        for (double ms : t.samples_ms) {
            std::printf(" %.3f", ms);
            csv << ',' << format_fixed(ms, 3);
        }
        std::printf("\n");
        csv << "\n";
    }
    if (!a.csv.empty()) write_text(a.csv, csv.str());
    return kOk;
}

// --- split -------------------------------------------------------------------

struct SplitArgs {
    std::string data;
    std::vector<double> ratios;
    std::optional<std::uint64_t> seed;
    std::string mode;
    std::string out;
    std::string config_path;
};

int run_split(const SplitArgs& a) {
    const Config config = load_config(a.config_path);
    const DatasetManifest m = prepare_split(a.data, config, a.ratios, a.seed, a.mode, "");
    const std::string text = serialize_split(m);
    if (a.out.empty())
        std::cout << text;
    else
        write_text(a.out, text);
    std::cerr << "train " << m.frames_in(Split::Train).size() << " / val " << m.frames_in(Split::Val).size()
              << " / test " << m.frames_in(Split::Test).size() << " frames\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    kernels::apply_thread_cap();

    CLI::App app{"Stereo color-mismatch correction toolkit"};
    app.require_subcommand(1);

    DistortArgs distort;
    CLI::App* cmd_distort = app.add_subcommand("distort", "synthesize a TRIPLET dataset from a PAIR dataset");
    cmd_distort->add_option("--in", distort.in, "PAIR dataset root")->required();
    cmd_distort->add_option("--out", distort.out, "output TRIPLET dataset root")->required();
    cmd_distort->add_option("--ops", distort.ops, "comma-separated: bc,gamma,hsv");
    cmd_distort->add_option("--seed", distort.seed, "distortion seed");
    cmd_distort->add_option("--config", distort.config_path, "key = value settings file");

    CorrectArgs correct;
    CLI::App* cmd_correct = app.add_subcommand("correct", "correct one left view towards its right view");
    cmd_correct->add_option("--left", correct.left, "left view PNG")->required();
    cmd_correct->add_option("--right", correct.right, "right view PNG")->required();
    cmd_correct->add_option("--method", correct.method, "correction method")->capture_default_str();
    cmd_correct->add_option("--out", correct.out, "corrected left view PNG")->required();
    add_method_flags(cmd_correct, correct.flags);

    EvaluateArgs evaluate;
    CLI::App* cmd_evaluate = app.add_subcommand("evaluate", "score methods on the TEST split of TRIPLET datasets");
    cmd_evaluate->add_option("--data", evaluate.data, "dataset root (repeatable)")->required();
    cmd_evaluate->add_option("--name", evaluate.names, "report name per dataset (repeatable)");
    cmd_evaluate->add_option("--methods,--method", evaluate.methods, "comma-separated method names");
    cmd_evaluate->add_option("--ratios", evaluate.ratios, "train,val,test")->delimiter(',');
    cmd_evaluate->add_option("--split-mode", evaluate.split_mode, "quota or hash");
    cmd_evaluate->add_option("--split-file", evaluate.split_file, "split written by `split`");
    cmd_evaluate->add_option("--csv", evaluate.csv, "write the CSV report here");
    cmd_evaluate->add_option("--markdown", evaluate.markdown, "write the markdown table here");
    cmd_evaluate->add_flag("--no-timing", evaluate.no_timing, "skip the timing probe");
    cmd_evaluate->add_option("--probe-size", evaluate.probe_size, "timing probe edge (default 512)");
    add_method_flags(cmd_evaluate, evaluate.flags);

    BenchArgs bench;
    CLI::App* cmd_bench = app.add_subcommand("bench", "min-of-N timing of each method on a square probe");
    cmd_bench->add_option("--methods,--method", bench.methods, "comma-separated method names");
    cmd_bench->add_option("--left", bench.left, "left view PNG (default: synthetic scene)");
    cmd_bench->add_option("--right", bench.right, "right view PNG");
    cmd_bench->add_option("--size", bench.size, "probe edge in pixels (default 512)");
    cmd_bench->add_option("--repeats", bench.repeats, "timed runs per method (default 3)");
    cmd_bench->add_flag("--warmup", bench.warmup, "run once untimed first");
    cmd_bench->add_option("--csv", bench.csv, "write timings here");
    add_method_flags(cmd_bench, bench.flags);

    SplitArgs split_args;
    CLI::App* cmd_split = app.add_subcommand("split", "assign scenes (or frames) to train/val/test");
    cmd_split->add_option("--data", split_args.data, "dataset root")->required();
    cmd_split->add_option("--ratios", split_args.ratios, "train,val,test")->delimiter(',');
    cmd_split->add_option("--seed", split_args.seed, "split seed");
    cmd_split->add_option("--mode", split_args.mode, "quota or hash");
    cmd_split->add_option("--out", split_args.out, "output file (default stdout)");
    cmd_split->add_option("--config", split_args.config_path, "key = value settings file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*cmd_distort) return run_distort(distort);
        if (*cmd_correct) return run_correct(correct);
        if (*cmd_evaluate) return run_evaluate(evaluate);
        if (*cmd_bench) return run_bench(bench);
        if (*cmd_split) return run_split(split_args);
    } catch (const MethodFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMethod;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const NearSingularCovariance& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMethod;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kData;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kData;
    }
    return kUsage;
}
