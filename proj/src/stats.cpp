#include "stereocolor/stats.hpp"

#include <algorithm>
#include <cmath>

#include "stereocolor/errors.hpp"
#include "stereocolor/kernels.hpp"

namespace stereocolor {

ColorStats compute_stats(const Image& img) {
    if (img.empty()) throw InvalidArgument("compute_stats: empty image");
    ColorStats s;
    s.mean = kernels::omp::channel_mean(img.data());
    s.cov = kernels::omp::covariance(img.data(), s.mean);
    for (int c = 0; c < 3; ++c) s.std[static_cast<std::size_t>(c)] = std::sqrt(std::max(s.cov(c, c), 0.0));
    return s;
}

}  // namespace stereocolor
