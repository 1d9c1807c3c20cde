#include "stereocolor/histogram.hpp"

#include <algorithm>
#include <cmath>

#include "stereocolor/errors.hpp"
#include "stereocolor/kernels.hpp"

namespace stereocolor {

Histogram1D Histogram1D::build(std::span<const double> values, std::size_t offset, std::size_t step, double lo,
                               double hi, int bins) {
    if (!(lo < hi)) throw InvalidArgument("Histogram1D: empty range");
    if (bins < 1) throw InvalidArgument("Histogram1D: bins must be positive");
    const auto raw = kernels::omp::histogram(values, {offset, step}, lo, hi, bins);

    Histogram1D h;
    const auto nb = static_cast<std::size_t>(bins);
    h.bin_edges.resize(nb + 1);
    const double width = (hi - lo) / bins;
    for (std::size_t k = 0; k <= nb; ++k) h.bin_edges[k] = lo + width * static_cast<double>(k);
    h.bin_edges[nb] = hi;
    h.counts.assign(raw.begin(), raw.end());

    h.cdf.assign(nb + 1, 0.0);
    double running = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
        running += h.counts[k];
        h.cdf[k + 1] = running;
    }
    if (running <= 0.0) throw InvalidArgument("Histogram1D: no samples");
    for (double& c : h.cdf) c /= running;
    h.cdf[nb] = 1.0;
    return h;
}

double Histogram1D::cdf_at(double x) const {
    const int nb = bins();
    const double w = bin_width();
    const double pos = (x - lo()) / w;
    if (pos <= 0.0) return 0.0;
    if (pos >= nb) return 1.0;
    const auto k = static_cast<std::size_t>(std::min(static_cast<int>(std::floor(pos)), nb - 1));
    const double frac = std::clamp((x - bin_edges[k]) / w, 0.0, 1.0);
    return cdf[k] + frac * (cdf[k + 1] - cdf[k]);
}

double Histogram1D::quantile(double u) const {
    u = std::clamp(u, 0.0, 1.0);
    const auto nb = static_cast<std::size_t>(bins());
    if (u <= 0.0) {
        // start of the first occupied bin
        const auto it = std::upper_bound(cdf.begin() + 1, cdf.end(), 0.0);
        return bin_edges[static_cast<std::size_t>(it - (cdf.begin() + 1))];
    }
    // first bin whose upper cdf reaches u; it is necessarily occupied
    auto j = static_cast<std::size_t>(std::lower_bound(cdf.begin() + 1, cdf.end(), u) - (cdf.begin() + 1));
    j = std::min(j, nb - 1);
    const double seg = cdf[j + 1] - cdf[j];
    if (seg <= 0.0) return bin_edges[j + 1];
    const double frac = std::clamp((u - cdf[j]) / seg, 0.0, 1.0);
    return bin_edges[j] + frac * (bin_edges[j + 1] - bin_edges[j]);
}

Transfer1D Transfer1D::constant(double value) {
    Transfer1D t;
    t.is_constant_ = true;
    t.constant_ = value;
    return t;
}

Transfer1D Transfer1D::from_histograms(Histogram1D source, Histogram1D reference) {
    Transfer1D t;
    t.source_ = std::move(source);
    t.reference_ = std::move(reference);
    return t;
}

double Transfer1D::operator()(double x) const {
    if (is_constant_) return constant_;
    return reference_.quantile(source_.cdf_at(x));
}

}  // namespace stereocolor
