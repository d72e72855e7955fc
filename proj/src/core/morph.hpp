#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/image.hpp"

namespace svx {

/// 3x3 structuring element for the hit-miss operator.
struct HitMissMask {
    enum Cell : uint8_t { IGNORE = 0, HIT = 1, MISS = 2 };
    std::array<Cell, 9> cells{}; // row-major, [row*3 + col]

    Cell at(int col, int row) const { return cells[row * 3 + col]; }

    /// Parse from three 3-char rows joined by '|', e.g. "x1x|010|101"
    /// ('1' = hit, '0' = miss, anything else = ignore).
    static HitMissMask parse(const std::string &spec);

    HitMissMask rotated90() const;

    /// True when the mask matches the image neighborhood centered at (x, y).
    /// Border pixels (any mask cell out of bounds over a non-IGNORE cell)
    /// never match.
    bool matches(const BinaryImage &img, int x, int y) const;
};

/// Expand each mask into its four 90-degree rotations, duplicates removed.
std::vector<HitMissMask> with_rotations(const std::vector<HitMissMask> &base);

// Mask families used across the pipeline; all returned with rotations.
const std::vector<HitMissMask> &junction_masks();
const std::vector<HitMissMask> &endpoint_masks();
const std::vector<HitMissMask> &connectivity_masks();
const std::vector<HitMissMask> &strict8_masks();

/// All interior positions where any mask matches; read-only, row-major order.
std::vector<Pixel> hit_miss_scan(const BinaryImage &img, const std::vector<HitMissMask> &masks);

/// Row-major scan that clears each matching pixel immediately, so later
/// matches see the updated image.
BinaryImage hit_miss_erode_inplace(BinaryImage img, const std::vector<HitMissMask> &masks);

struct Component {
    std::vector<Pixel> pixels;
    int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    size_t size() const { return pixels.size(); }
};

std::vector<Component> connected_components(const BinaryImage &img, int connectivity);

/// Component labels image: -1 background, otherwise index into the
/// connected_components() result for the same image/connectivity.
std::vector<int32_t> component_labels(const BinaryImage &img, int connectivity);

/// Median filter with odd window >= 3; borders use edge-replicated windows.
GrayImage median_filter(const GrayImage &img, int window);

/// Threshold over a 256-bin histogram spanning [min, max] of the input,
/// minimizing intra-class variance; ties break toward the lower threshold.
double otsu_threshold(const std::vector<double> &values);

} // namespace svx
