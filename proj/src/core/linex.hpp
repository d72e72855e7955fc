#pragma once

#include <vector>

#include "core/image.hpp"
#include "core/morph.hpp"

namespace svx {

/// Isotropic Gaussian dot template used as the line-likeness probe.
struct DotKernel {
    int size = 0;      // odd
    double sigma = 0.0;
    std::vector<double> weights; // size x size, row-major

    double at(int x, int y) const { return weights[size_t(y) * size + x]; }

    static DotKernel make(double sigma);
};

/// Smallest odd integer >= x.
int next_odd(double x);

/// Geometric ladder of dot kernels covering stroke widths [w_min, w_max].
struct KernelPyramid {
    std::vector<DotKernel> kernels;
    double w_min = 0.0, w_max = 0.0, base = 2.0;

    static KernelPyramid build(double w_min, double w_max, double base);
};

/// Per-kernel correlation maps; samples in [-1, 1], zero-filled margin of
/// size/2 pixels per layer.
struct PccStack {
    std::vector<GrayImage> layers;
    std::vector<int> margins;
};

struct LinexConfig {
    double w_min = 3.0;
    double w_max = 12.0;
    double base = 2.0;
    double mpcc_threshold = 0.1;
    int min_component_size = 20;
    int median_window = 0; // 0 = auto: next odd > 2 * w_max

    int effective_median_window() const;
    void validate() const;
};

/// Correlation coefficient between the kernel and the window centered at
/// (x, y); the window must lie fully inside the image. Zero-variance windows
/// or kernels map to 0.
double punctual_pcc(const GrayImage &img, const DotKernel &kernel, int x, int y);

/// Correlation map against the inverted image (lines bright); margin of
/// size/2 filled with 0. Throws if the image is not larger than the kernel.
GrayImage pcc_map(const GrayImage &img, const DotKernel &kernel);

/// Per-pixel merge keeping the value of largest magnitude across layers.
GrayImage merge_mpcc(const PccStack &stack);

PccStack build_pcc_stack(const GrayImage &img, const KernelPyramid &pyramid);

/// Full extraction: pyramid, correlation stack, merge, threshold and
/// post-filtering (small components, high-pass darkness test, hole filling).
BinaryImage extract_lines_region(const GrayImage &img, const LinexConfig &cfg);

} // namespace svx
