#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stereocolor/dataset.hpp"
#include "stereocolor/methods.hpp"

namespace stereocolor {

struct BenchmarkConfig {
    std::string dataset_name = "dataset";
    MethodOptions options;
    bool timing = true;
    int timing_repeats = 3;
    int probe_size = 512;
    bool warmup = false;
};

struct FrameResult {
    std::string method;
    std::string frame_id;
    double psnr_db = 0.0;
    double ssim = 0.0;
    std::string error;  // non-empty when the method failed on this frame

    bool ok() const { return error.empty(); }
};

struct EvaluationRow {
    std::string method;
    MethodType type = MethodType::Global;
    std::string dataset;
    int frames = 0;  // frames that contributed to the means
    int failed = 0;
    std::optional<double> time_ms;
    double psnr_mean = 0.0;
    double ssim_mean = 0.0;
};

struct EvaluationReport {
    std::vector<EvaluationRow> rows;
    std::vector<FrameResult> frame_results;

    /// method,type,dataset,frames,failed,time_ms,psnr_db,ssim
    std::string to_csv(bool include_timing = true) const;
    /// One line per method, PSNR/SSIM column pair per dataset, methods in first-seen order.
    std::string to_markdown() const;
    void append(const EvaluationReport& other);
};

/// Corrects every TEST frame's left view towards its right view with each method and
/// scores it against the ground truth. Timing is min-of-repeats on a probe cut from the
/// first TEST frame. Per-frame method errors are recorded and the frame is skipped.
/// Throws DatasetError unless the manifest is TRIPLET with a non-empty TEST split.
EvaluationReport run_benchmark(const DatasetManifest& manifest, const std::vector<std::string>& methods,
                               const BenchmarkConfig& config = {});

/// Formats a value the way the reports do; infinity prints as "inf".
std::string format_fixed(double value, int decimals);

}  // namespace stereocolor
