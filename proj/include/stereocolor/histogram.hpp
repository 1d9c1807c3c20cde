#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stereocolor {

/// Equal-width histogram over [lo, hi] with its normalized cumulative distribution.
struct Histogram1D {
    std::vector<double> bin_edges;  // bins + 1, strictly increasing
    std::vector<double> counts;     // bins
    std::vector<double> cdf;        // bins + 1, cdf[0] = 0, cdf[bins] = 1

    int bins() const { return static_cast<int>(counts.size()); }
    double lo() const { return bin_edges.front(); }
    double hi() const { return bin_edges.back(); }
    double bin_width() const { return (hi() - lo()) / bins(); }

    /// Histogram of values[offset], values[offset + step], ...; requires lo < hi.
    static Histogram1D build(std::span<const double> values, std::size_t offset, std::size_t step, double lo, double hi,
                             int bins);

    /// Linearly interpolated empirical CDF.
    double cdf_at(double x) const;
    /// Inverse of cdf_at; u is clamped to [0,1].
    double quantile(double u) const;
};

/// Monotone 1D map x -> C_ref^-1(C_src(x)) built from two histograms on a shared range.
class Transfer1D {
public:
    /// Every input maps to `value`.
    static Transfer1D constant(double value);
    static Transfer1D from_histograms(Histogram1D source, Histogram1D reference);

    double operator()(double x) const;

    const Histogram1D& source() const { return source_; }
    const Histogram1D& reference() const { return reference_; }

private:
    bool is_constant_ = false;
    double constant_ = 0.0;
    Histogram1D source_;
    Histogram1D reference_;
};

}  // namespace stereocolor
