#pragma once

#include <string>

#include "lexred/raster.hpp"

namespace lexred {

// Read a PNG as 8-bit grayscale (palette/RGB/16-bit inputs are converted).
// Throws DataError on unreadable or corrupt files.
GrayImage read_png_gray(const std::string& path);

// Write an 8-bit grayscale PNG with pinned settings so identical pixels
// produce identical bytes.
void write_png_gray(const std::string& path, const GrayImage& img);

} // namespace lexred
