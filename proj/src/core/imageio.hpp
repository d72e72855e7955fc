#pragma once

#include <string>

#include "core/image.hpp"

namespace svx {

/// Load a PNG, BMP or PGM raster as normalized grayscale (RGB converts by
/// Rec.601 luma). Throws IoError on unreadable input.
GrayImage load_gray(const std::string &path);

/// Save as 8-bit grayscale; the container comes from the file extension
/// (.png, .bmp, .pgm).
void save_gray(const GrayImage &img, const std::string &path);

/// Foreground = dark pixels (value < 0.5).
BinaryImage mask_from_gray(const GrayImage &img);

/// Foreground renders black on white.
GrayImage gray_from_mask(const BinaryImage &mask);

} // namespace svx
