#include "stereocolor/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "stereocolor/errors.hpp"
#include "stereocolor/synthetic.hpp"

namespace stereocolor {

std::string format_fixed(double value, int decimals) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

std::string EvaluationReport::to_csv(bool include_timing) const {
    std::ostringstream out;
    out << "method,type,dataset,frames,failed," << (include_timing ? "time_ms," : "") << "psnr_db,ssim\n";
    for (const EvaluationRow& r : rows) {
        out << r.method << ',' << to_string(r.type) << ',' << r.dataset << ',' << r.frames << ',' << r.failed << ',';
        if (include_timing) out << (r.time_ms ? format_fixed(*r.time_ms, 3) : "") << ',';
        out << format_fixed(r.psnr_mean, 6) << ',' << format_fixed(r.ssim_mean, 8) << '\n';
    }
    return out.str();
}

std::string EvaluationReport::to_markdown() const {
    std::vector<std::string> methods;
    std::vector<std::string> datasets;
    std::map<std::pair<std::string, std::string>, const EvaluationRow*> cell;
    for (const EvaluationRow& r : rows) {
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
        if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) datasets.push_back(r.dataset);
        cell[{r.method, r.dataset}] = &r;
    }

    std::vector<std::vector<std::string>> table;
    std::vector<std::string> header{"Method", "Type", "Time, ms"};
    for (const std::string& d : datasets) {
        header.push_back(d + " PSNR");
        header.push_back(d + " SSIM");
    }
    table.push_back(header);
    for (const std::string& m : methods) {
        std::vector<std::string> line{m, "", ""};
        std::optional<double> best_time;
        for (const std::string& d : datasets) {
            const auto it = cell.find({m, d});
            if (it == cell.end()) {
                line.push_back("-");
                line.push_back("-");
                continue;
            }
            const EvaluationRow& r = *it->second;
            line[1] = std::string(to_string(r.type));
            if (r.time_ms && (!best_time || *r.time_ms < *best_time)) best_time = r.time_ms;
            line.push_back(r.frames > 0 ? format_fixed(r.psnr_mean, 4) : "-");
            line.push_back(r.frames > 0 ? format_fixed(r.ssim_mean, 6) : "-");
        }
        line[2] = best_time ? format_fixed(*best_time, 0) : "-";
        table.push_back(line);
    }

    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& line : table)
        for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
    std::ostringstream out;
    const auto emit = [&](const std::vector<std::string>& line) {
        out << '|';
        for (std::size_t c = 0; c < line.size(); ++c) {
            const std::size_t pad = width[c] - line[c].size();
            // text columns left-aligned, numbers right-aligned
            if (c < 2)
                out << ' ' << line[c] << std::string(pad, ' ') << " |";
            else
                out << ' ' << std::string(pad, ' ') << line[c] << " |";
        }
        out << '\n';
    };
    emit(table.front());
    out << '|';
    for (std::size_t c = 0; c < width.size(); ++c)
        out << (c < 2 ? " :" : " ") << std::string(width[c] - 1, '-') << (c < 2 ? " |" : ": |");
    out << '\n';
    for (std::size_t i = 1; i < table.size(); ++i) emit(table[i]);
    return out.str();
}

void EvaluationReport::append(const EvaluationReport& other) {
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
    frame_results.insert(frame_results.end(), other.frame_results.begin(), other.frame_results.end());
}

EvaluationReport run_benchmark(const DatasetManifest& manifest, const std::vector<std::string>& methods,
                               const BenchmarkConfig& config) {
    if (manifest.layout != Layout::Triplet)
        throw DatasetError("evaluation needs ground truth (TRIPLET layout), got a PAIR dataset");
    const std::vector<FrameEntry> test = manifest.frames_in(Split::Test);
    if (test.empty()) throw DatasetError("TEST split is empty");

    std::vector<Stereopair> pairs;
    pairs.reserve(test.size());
    for (const FrameEntry& f : test) pairs.push_back(load_frame(f));

    std::optional<Stereopair> probe;
    if (config.timing) {
        probe.emplace();
        probe->left = make_probe(pairs.front().left, config.probe_size);
        probe->right = make_probe(pairs.front().right, config.probe_size);
    }

    EvaluationReport report;
    for (const std::string& name : methods) {
        const MethodInfo& info = method_info(name);
        const CorrectionFn method = make_method(name, config.options);
        EvaluationRow row;
        row.method = info.name;
        row.type = info.type;
        row.dataset = config.dataset_name;
        double psnr_sum = 0.0;
        double ssim_sum = 0.0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            FrameResult fr;
            fr.method = info.name;
            fr.frame_id = test[i].id();
            try {
                const Image corrected = method(pairs[i].left, pairs[i].right);
                const MetricsReport m = evaluate_pair(corrected, *pairs[i].gt_left);
                fr.psnr_db = m.psnr_db;
                fr.ssim = m.ssim;
                psnr_sum += m.psnr_db;
                ssim_sum += m.ssim;
                ++row.frames;
            } catch (const Error& e) {
                fr.error = e.what();
                ++row.failed;
            }
            report.frame_results.push_back(fr);
        }
        if (row.frames > 0) {
            row.psnr_mean = psnr_sum / row.frames;
            row.ssim_mean = ssim_sum / row.frames;
        }
        if (probe) {
            try {
                row.time_ms = time_method(method, *probe, config.timing_repeats, config.warmup).min_ms;
            } catch (const Error&) {
                row.time_ms.reset();
            }
        }
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace stereocolor
