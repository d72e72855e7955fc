#pragma once

#include <cstdint>
#include <vector>

#include "core/geometry.hpp"

namespace svx {

/// Row-major grid of intensities normalized to [0, 1].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> samples;

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0)
        : width(w), height(h), samples(size_t(w) * size_t(h), fill) {}

    double &at(int x, int y) { return samples[size_t(y) * width + x]; }
    double at(int x, int y) const { return samples[size_t(y) * width + x]; }
    bool inside(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    size_t pixel_count() const { return samples.size(); }
};

/// Row-major boolean grid; 1 = foreground.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> bits;

    BinaryImage() = default;
    BinaryImage(int w, int h, uint8_t fill = 0)
        : width(w), height(h), bits(size_t(w) * size_t(h), fill) {}

    uint8_t &at(int x, int y) { return bits[size_t(y) * width + x]; }
    uint8_t at(int x, int y) const { return bits[size_t(y) * width + x]; }
    bool inside(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    bool get(int x, int y) const { return inside(x, y) && bits[size_t(y) * width + x] != 0; }
    void set(int x, int y, bool v) { bits[size_t(y) * width + x] = v ? 1 : 0; }

    size_t foreground_count() const;
    bool operator==(const BinaryImage &o) const {
        return width == o.width && height == o.height && bits == o.bits;
    }
};

GrayImage invert(const GrayImage &img);
BinaryImage rotate90(const BinaryImage &img);
GrayImage rotate90(const GrayImage &img);

} // namespace svx
