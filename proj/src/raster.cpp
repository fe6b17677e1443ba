#include "lexred/raster.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "lexred/error.hpp"

namespace lexred {

int otsu_threshold(const GrayImage& img) {
    std::array<int64_t, 256> hist{};
    for (uint8_t v : img.pixels) hist[v]++;

    const int64_t total = static_cast<int64_t>(img.pixels.size());
    if (total == 0) return -1;

    int64_t weighted_sum = 0;
    for (int v = 0; v < 256; ++v) weighted_sum += static_cast<int64_t>(v) * hist[v];

    int best_t = -1;
    double best_var = -1.0;
    int64_t w0 = 0;      // pixels with value <= t
    int64_t sum0 = 0;
    for (int t = 0; t < 255; ++t) {
        w0 += hist[t];
        sum0 += static_cast<int64_t>(t) * hist[t];
        const int64_t w1 = total - w0;
        if (w0 == 0 || w1 == 0) continue;
        const double mu0 = static_cast<double>(sum0) / static_cast<double>(w0);
        const double mu1 = static_cast<double>(weighted_sum - sum0) / static_cast<double>(w1);
        const double var = static_cast<double>(w0) * static_cast<double>(w1) * (mu0 - mu1) * (mu0 - mu1);
        if (var > best_var) {
            best_var = var;
            best_t = t;
        }
    }
    return best_t;
}

namespace {

struct Component {
    int64_t area = 0;
    int min_r = std::numeric_limits<int>::max();
    int max_r = -1;
    int min_c = std::numeric_limits<int>::max();
    int max_c = -1;
};

// 8-connected labeling by iterative flood fill, components numbered in
// row-major order of their first pixel.
std::vector<Component> label_components(int width, int height,
                                        const std::vector<uint8_t>& ink,
                                        std::vector<int32_t>& labels) {
    labels.assign(ink.size(), -1);
    std::vector<Component> comps;
    std::vector<size_t> stack;
    for (size_t start = 0; start < ink.size(); ++start) {
        if (!ink[start] || labels[start] >= 0) continue;
        const int32_t id = static_cast<int32_t>(comps.size());
        comps.emplace_back();
        Component& comp = comps.back();
        stack.clear();
        stack.push_back(start);
        labels[start] = id;
        while (!stack.empty()) {
            const size_t p = stack.back();
            stack.pop_back();
            const int r = static_cast<int>(p) / width;
            const int c = static_cast<int>(p) % width;
            comp.area++;
            comp.min_r = std::min(comp.min_r, r);
            comp.max_r = std::max(comp.max_r, r);
            comp.min_c = std::min(comp.min_c, c);
            comp.max_c = std::max(comp.max_c, c);
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    const int nr = r + dr;
                    const int nc = c + dc;
                    if (nr < 0 || nr >= height || nc < 0 || nc >= width) continue;
                    const size_t np = static_cast<size_t>(nr) * width + nc;
                    if (ink[np] && labels[np] < 0) {
                        labels[np] = id;
                        stack.push_back(np);
                    }
                }
            }
        }
    }
    return comps;
}

} // namespace

ShapeImage preprocess(const GrayImage& raw) {
    if (raw.width <= 0 || raw.height <= 0 || raw.pixels.empty())
        throw DataError("blank image");

    std::vector<uint8_t> ink(raw.pixels.size(), 0);
    const int t = otsu_threshold(raw);
    if (t < 0) {
        // Single gray value: dark means all ink, light means no shape at all.
        if (raw.pixels[0] < 128) {
            std::fill(ink.begin(), ink.end(), uint8_t{1});
        } else {
            throw DataError("blank image");
        }
    } else {
        for (size_t i = 0; i < raw.pixels.size(); ++i)
            ink[i] = raw.pixels[i] <= t ? 1 : 0;
    }

    std::vector<int32_t> labels;
    const auto comps = label_components(raw.width, raw.height, ink, labels);
    if (comps.empty()) throw DataError("blank image");

    // Largest component wins; ties keep the earliest in row-major order.
    int32_t keep = 0;
    for (int32_t i = 1; i < static_cast<int32_t>(comps.size()); ++i)
        if (comps[i].area > comps[keep].area) keep = i;

    const Component& comp = comps[keep];
    const int cw = comp.max_c - comp.min_c + 1;
    const int ch = comp.max_r - comp.min_r + 1;
    if (cw < 8 || ch < 8) throw DataError("degenerate shape");

    ShapeImage shape;
    shape.width = cw;
    shape.height = ch;
    shape.pixels.assign(static_cast<size_t>(cw) * ch, 0);
    for (int r = comp.min_r; r <= comp.max_r; ++r) {
        for (int c = comp.min_c; c <= comp.max_c; ++c) {
            const size_t p = static_cast<size_t>(r) * raw.width + c;
            if (ink[p] && labels[p] == keep)
                shape.pixels[static_cast<size_t>(r - comp.min_r) * cw + (c - comp.min_c)] = 1;
        }
    }
    return shape;
}

GrayImage to_gray(const ShapeImage& shape) {
    GrayImage g = GrayImage::filled(shape.width, shape.height, 255);
    for (size_t i = 0; i < shape.pixels.size(); ++i)
        if (shape.pixels[i]) g.pixels[i] = 0;
    return g;
}

int count_components(const ShapeImage& shape) {
    std::vector<int32_t> labels;
    return static_cast<int>(label_components(shape.width, shape.height, shape.pixels, labels).size());
}

} // namespace lexred
