#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/image.hpp"

namespace svx {

struct CorruptionConfig {
    uint64_t seed = 0;
    double width_min = 3.0;
    double width_max = 9.0;
    double intensity_min = 0.25;
    double intensity_max = 0.9;
    int overdraw_min = 1;
    int overdraw_max = 2;
    double break_probability = 0.05;
    double break_fraction = 0.1; // fraction of the stroke removed per break
    double jitter_amplitude = 1.5;
    double background_noise_sigma = 0.02;
    double texture_amplitude = 0.03;
    double target_megapixels = 1.0; // <= 0 keeps the input scale

    void validate() const;
};

struct EvalMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    double centerline_distance = 0.0;
};

/// Renders the clean drawing as simulated pencil strokes: bell-shaped
/// cross-profiles with randomized width/intensity, overdraws, breaks,
/// positional jitter, background noise and paper texture. Deterministic for
/// a given seed. Returns the corrupted grayscale and the (possibly rescaled)
/// ground-truth mask.
std::pair<GrayImage, BinaryImage> corrupt(const BinaryImage &gt, const CorruptionConfig &cfg);

/// Tolerance-matched precision/recall via exact distance transforms: a
/// predicted pixel counts when within `tolerance` of any truth pixel, and
/// symmetrically for recall. An empty prediction has precision 1.
std::pair<double, double> precision_recall(const BinaryImage &pred, const BinaryImage &gt,
                                           double tolerance);

/// Symmetrized mean nearest-pixel distance between two skeletons.
double centerline_distance(const BinaryImage &pred_skel, const BinaryImage &gt_skel);

/// Exact Euclidean distance to the nearest foreground pixel, per pixel.
GrayImage distance_transform(const BinaryImage &img);

/// Clean synthetic line drawing (random smooth strokes, 1 px wide) for
/// corpus generation.
BinaryImage generate_line_drawing(int width, int height, int strokes, uint64_t seed);

} // namespace svx
