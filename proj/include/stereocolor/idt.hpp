#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stereocolor/image.hpp"
#include "stereocolor/mat3.hpp"

namespace stereocolor {

/// Iterative distribution transfer settings.
struct IdtConfig {
    int iterations = 20;
    int bins = 300;
    std::uint64_t seed = 0;
    bool regrain = true;
    double regrain_strength = 1.0;

    /// Throws InvalidArgument unless iterations >= 1, bins >= 16 and strength >= 0.
    void validate() const;
};

/// Pixel count above which histograms are built from a strided subsample.
inline constexpr std::size_t kIdtFullSampleLimit = 1'000'000;

/// Uniformly distributed rotation in SO(3), a pure function of (seed, iteration).
Mat3 random_rotation(std::uint64_t seed, std::uint64_t iteration);

/// Maps every target sample through C_ref^-1(C_target(x)), both CDFs built from
/// `bins`-bin histograms over the shared range of the two sequences.
/// A constant reference maps everything to that constant.
std::vector<double> pdf_transfer_1d(std::span<const double> target, std::span<const double> reference, int bins);

/// One IDT round with an explicit rotation: project both clouds on the rows of
/// `rotation`, match each axis, rotate back. `points` is updated in place.
void idt_step(std::span<double> points, std::span<const double> reference, const Mat3& rotation, int bins);

/// Called after each iteration with the 1-based iteration number and the current,
/// unclamped and un-regrained, colors.
using IdtObserver = std::function<void(int iteration, const Image& current)>;

/// Local color transfer by iterated 1D distribution matching, optionally followed by
/// regrain. Output is clamped to [0,1].
Image idt_transfer(const Image& target, const Image& reference, const IdtConfig& config = {},
                   const IdtObserver& observer = {});

/// 1-Wasserstein distance between two empirical distributions.
double wasserstein1(std::span<const double> a, std::span<const double> b);

/// W1 between the projections of two images on a unit axis.
double projected_wasserstein1(const Image& a, const Image& b, const Vec3& axis);

// Regrain: minimize  sum |grad out - grad source|^2 + lambda |out - mapped|^2
// with lambda = regrain_lambda(strength, |grad source|), large on flat source areas.

inline constexpr int kRegrainSweeps = 32;

double regrain_lambda(double strength, double source_gradient);

/// Per-pixel lambda for a structure source. Requires strength > 0.
std::vector<double> regrain_weights(const Image& structure_source, double strength);

/// Value of the regrain cost for a candidate output.
double regrain_energy(const Image& out, const Image& structure_source, const Image& color_mapped,
                      std::span<const double> lambda);

/// Observer receives the sweep index (1-based) and the energy after that sweep.
using RegrainObserver = std::function<void(int sweep, double energy)>;

/// strength == 0 returns color_mapped unchanged. Throws DimensionMismatch.
/// The result is not clamped.
Image regrain(const Image& structure_source, const Image& color_mapped, double strength,
              const RegrainObserver& observer = {});

}  // namespace stereocolor
