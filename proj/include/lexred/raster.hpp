#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lexred {

// 8-bit grayscale raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> pixels; // height * width

    uint8_t at(int r, int c) const { return pixels[static_cast<size_t>(r) * width + c]; }
    uint8_t& at(int r, int c) { return pixels[static_cast<size_t>(r) * width + c]; }

    static GrayImage filled(int width, int height, uint8_t value) {
        GrayImage g;
        g.width = width;
        g.height = height;
        g.pixels.assign(static_cast<size_t>(width) * height, value);
        return g;
    }
};

enum class ImageSource : uint8_t { ingested = 0, synthetic = 1 };

// Preprocessed binary shape: single ink component, tight-cropped so the ink
// bounding box touches all four raster edges.
struct ShapeImage {
    std::string id;
    std::string label;
    int width = 0;
    int height = 0;
    std::vector<uint8_t> pixels; // 1 = ink, 0 = background
    ImageSource source = ImageSource::ingested;

    bool ink(int r, int c) const { return pixels[static_cast<size_t>(r) * width + c] != 0; }
    size_t pixel_count() const { return pixels.size(); }
};

// Otsu threshold over the gray histogram, maximizing between-class variance.
// Ink is the dark class: pixels with value <= t. Returns -1 when the image
// has fewer than two distinct gray values (no split exists).
int otsu_threshold(const GrayImage& img);

// Binarize (Otsu), keep only the largest 8-connected ink component, tight-crop
// to its bounding box. Deterministic; equal-area ties keep the component first
// encountered in row-major order.
// Throws DataError("blank image") when no ink survives binarization and
// DataError("degenerate shape") when the crop is smaller than 8x8.
ShapeImage preprocess(const GrayImage& raw);

// Ink -> 0, background -> 255. Feeding the result back through preprocess()
// reproduces the shape pixel-for-pixel.
GrayImage to_gray(const ShapeImage& shape);

// Number of 8-connected ink components.
int count_components(const ShapeImage& shape);

} // namespace lexred
