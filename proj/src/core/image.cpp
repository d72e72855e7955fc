#include "core/image.hpp"

#include <algorithm>

namespace svx {

size_t BinaryImage::foreground_count() const {
    return size_t(std::count_if(bits.begin(), bits.end(), [](uint8_t b) { return b != 0; }));
}

GrayImage invert(const GrayImage &img) {
    GrayImage out(img.width, img.height);
    for (size_t i = 0; i < img.samples.size(); ++i)
        out.samples[i] = 1.0 - img.samples[i];
    return out;
}

// 90 degrees counterclockwise in raster coordinates: (x, y) -> (y, W-1-x).
BinaryImage rotate90(const BinaryImage &img) {
    BinaryImage out(img.height, img.width);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            out.at(y, img.width - 1 - x) = img.at(x, y);
    return out;
}

GrayImage rotate90(const GrayImage &img) {
    GrayImage out(img.height, img.width);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            out.at(y, img.width - 1 - x) = img.at(x, y);
    return out;
}

} // namespace svx
