#include "lexred/descriptors.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

#include "lexred/error.hpp"
#include "lexred/rng.hpp"

namespace lexred {

const char* to_string(DescriptorId id) {
    switch (id) {
        case DescriptorId::Loci: return "loci";
        case DescriptorId::Fourier: return "fourier";
        case DescriptorId::Zoning: return "zoning";
    }
    return "?";
}

std::optional<DescriptorId> descriptor_from_string(std::string_view name) {
    for (DescriptorId id : kAllDescriptors)
        if (name == to_string(id)) return id;
    return std::nullopt;
}

const char* to_string(FeatureBlock block) {
    switch (block) {
        case FeatureBlock::Loci: return "loci";
        case FeatureBlock::Fourier: return "fourier";
        case FeatureBlock::Zoning: return "zoning";
        case FeatureBlock::Concatenated: return "concat";
    }
    return "?";
}

uint32_t DescriptorParams::dim(FeatureBlock block) const {
    switch (block) {
        case FeatureBlock::Loci: return loci_dim();
        case FeatureBlock::Fourier: return fourier_dim();
        case FeatureBlock::Zoning: return zoning_dim();
        case FeatureBlock::Concatenated: return concat_dim();
    }
    return 0;
}

uint32_t DescriptorParams::offset(FeatureBlock block) const {
    switch (block) {
        case FeatureBlock::Loci: return 0;
        case FeatureBlock::Fourier: return loci_dim();
        case FeatureBlock::Zoning: return loci_dim() + fourier_dim();
        case FeatureBlock::Concatenated: return 0;
    }
    return 0;
}

uint64_t DescriptorParams::hash() const {
    const uint32_t fields[5] = {loci_cap, fourier_points, fourier_pairs, zoning_rows, zoning_cols};
    return fnv1a64(fields, sizeof(fields));
}

namespace {

void check_dim(const char* what, size_t got, size_t want) {
    if (got != want)
        throw std::logic_error(std::string(what) + " dimension " + std::to_string(got) +
                               " != pinned " + std::to_string(want));
}

} // namespace

FeatureVector extract_loci(const ShapeImage& image, const DescriptorParams& params) {
    const int w = image.width;
    const int h = image.height;
    const uint32_t base = params.loci_cap + 1;
    const uint32_t dim = params.loci_dim();

    // Completed-run counts per direction. For a background pixel the count
    // equals the number of maximal ink runs its ray crosses before leaving
    // the raster.
    const size_t n = static_cast<size_t>(w) * h;
    std::vector<uint8_t> up(n), down(n), left(n), right(n);
    auto clamp_cap = [&](uint32_t runs) {
        return static_cast<uint8_t>(runs < params.loci_cap ? runs : params.loci_cap);
    };

    for (int c = 0; c < w; ++c) {
        uint32_t runs = 0;
        bool prev = false;
        for (int r = 0; r < h; ++r) {
            const bool ink = image.ink(r, c);
            up[static_cast<size_t>(r) * w + c] = clamp_cap(runs);
            if (ink && !prev) ++runs;
            prev = ink;
        }
        runs = 0;
        prev = false;
        for (int r = h - 1; r >= 0; --r) {
            const bool ink = image.ink(r, c);
            down[static_cast<size_t>(r) * w + c] = clamp_cap(runs);
            if (ink && !prev) ++runs;
            prev = ink;
        }
    }
    for (int r = 0; r < h; ++r) {
        uint32_t runs = 0;
        bool prev = false;
        for (int c = 0; c < w; ++c) {
            const bool ink = image.ink(r, c);
            left[static_cast<size_t>(r) * w + c] = clamp_cap(runs);
            if (ink && !prev) ++runs;
            prev = ink;
        }
        runs = 0;
        prev = false;
        for (int c = w - 1; c >= 0; --c) {
            const bool ink = image.ink(r, c);
            right[static_cast<size_t>(r) * w + c] = clamp_cap(runs);
            if (ink && !prev) ++runs;
            prev = ink;
        }
    }

    std::vector<int64_t> hist(dim, 0);
    int64_t total = 0;
    for (size_t i = 0; i < n; ++i) {
        if (image.pixels[i]) continue;
        const uint32_t code =
            ((static_cast<uint32_t>(up[i]) * base + down[i]) * base + left[i]) * base + right[i];
        hist[code]++;
        total++;
    }

    FeatureVector fv{DescriptorId::Loci, image.id, std::vector<float>(dim, 0.0f)};
    if (total > 0)
        for (uint32_t i = 0; i < dim; ++i)
            fv.values[i] = static_cast<float>(static_cast<double>(hist[i]) / static_cast<double>(total));
    check_dim("loci", fv.values.size(), dim);
    return fv;
}

std::vector<std::pair<int, int>> trace_outer_boundary(const ShapeImage& image) {
    const int w = image.width;
    const int h = image.height;

    int min_x = w, min_y = h;
    int start_x = -1, start_y = -1;
    for (int r = 0; r < h && start_y < 0; ++r)
        for (int c = 0; c < w; ++c)
            if (image.ink(r, c)) {
                start_x = c;
                start_y = r;
                break;
            }
    if (start_y < 0) throw DataError("degenerate contour");
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (image.ink(r, c)) {
                min_x = std::min(min_x, c);
                min_y = std::min(min_y, r);
            }

    // Moore neighborhood in clockwise order for y-down rasters, from West.
    static constexpr int dx[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
    static constexpr int dy[8] = {0, -1, -1, -1, 0, 1, 1, 1};

    auto ink_at = [&](int x, int y) {
        return x >= 0 && x < w && y >= 0 && y < h && image.ink(y, x);
    };

    std::vector<std::pair<int, int>> contour;
    int cx = start_x, cy = start_y;
    int bx = start_x - 1, by = start_y; // backtrack: West of start, background
    contour.emplace_back(cx - min_x, cy - min_y);

    const size_t limit = 4 * static_cast<size_t>(w) * h + 8;
    while (contour.size() <= limit) {
        int dir = 0;
        for (; dir < 8; ++dir)
            if (cx + dx[dir] == bx && cy + dy[dir] == by) break;

        int next = -1;
        for (int step = 1; step <= 8; ++step) {
            const int d = (dir + step) & 7;
            if (ink_at(cx + dx[d], cy + dy[d])) {
                next = d;
                break;
            }
            bx = cx + dx[d]; // last background cell scanned
            by = cy + dy[d];
        }
        if (next < 0) break; // isolated pixel

        cx += dx[next];
        cy += dy[next];
        if (cx == start_x && cy == start_y && bx == start_x - 1 && by == start_y)
            break; // closed the loop with the starting entry state
        contour.emplace_back(cx - min_x, cy - min_y);
    }
    return contour;
}

FeatureVector extract_fourier(const ShapeImage& image, const DescriptorParams& params) {
    const auto contour = trace_outer_boundary(image);
    if (contour.size() < 8) throw DataError("degenerate contour");

    const size_t m = contour.size();
    std::vector<double> cum(m + 1, 0.0);
    for (size_t i = 1; i <= m; ++i) {
        const auto& a = contour[i - 1];
        const auto& b = contour[i % m];
        const double ddx = b.first - a.first;
        const double ddy = b.second - a.second;
        cum[i] = cum[i - 1] + std::sqrt(ddx * ddx + ddy * ddy);
    }
    const double total = cum[m];

    // Resample at uniform arc-length positions.
    const uint32_t points = params.fourier_points;
    std::vector<double> zx(points), zy(points);
    size_t seg = 0;
    for (uint32_t k = 0; k < points; ++k) {
        const double s = total * k / points;
        while (seg + 1 < m && cum[seg + 1] <= s) ++seg;
        const auto& a = contour[seg];
        const auto& b = contour[(seg + 1) % m];
        const double t = (s - cum[seg]) / (cum[seg + 1] - cum[seg]);
        zx[k] = a.first + t * (b.first - a.first);
        zy[k] = a.second + t * (b.second - a.second);
    }

    // Harmonic magnitudes |Z(+1)|,|Z(-1)|,...,|Z(+pairs)|,|Z(-pairs)|.
    const uint32_t dim = params.fourier_dim();
    std::vector<double> mag(dim, 0.0);
    const double two_pi = 2.0 * std::numbers::pi;
    for (uint32_t hm = 1; hm <= params.fourier_pairs; ++hm) {
        double re_pos = 0.0, im_pos = 0.0, re_neg = 0.0, im_neg = 0.0;
        for (uint32_t k = 0; k < points; ++k) {
            const double ang = two_pi * hm * k / points;
            const double c = std::cos(ang);
            const double s = std::sin(ang);
            // exp(-i*ang) for +m, exp(+i*ang) for -m
            re_pos += zx[k] * c + zy[k] * s;
            im_pos += -zx[k] * s + zy[k] * c;
            re_neg += zx[k] * c - zy[k] * s;
            im_neg += zx[k] * s + zy[k] * c;
        }
        mag[2 * (hm - 1)] = std::sqrt(re_pos * re_pos + im_pos * im_pos);
        mag[2 * (hm - 1) + 1] = std::sqrt(re_neg * re_neg + im_neg * im_neg);
    }

    double norm = mag[0]; // |Z(+1)|
    if (norm < 1e-9)
        for (double v : mag) norm = std::max(norm, v);

    FeatureVector fv{DescriptorId::Fourier, image.id, std::vector<float>(dim, 0.0f)};
    if (norm >= 1e-9)
        for (uint32_t i = 0; i < dim; ++i) fv.values[i] = static_cast<float>(mag[i] / norm);
    check_dim("fourier", fv.values.size(), dim);
    return fv;
}

FeatureVector extract_zoning(const ShapeImage& image, const DescriptorParams& params) {
    const int rows = static_cast<int>(params.zoning_rows);
    const int cols = static_cast<int>(params.zoning_cols);
    if (image.height < rows || image.width < cols)
        throw DataError("raster smaller than zoning grid");

    const int cell_h = image.height / rows;
    const int cell_w = image.width / cols;

    FeatureVector fv{DescriptorId::Zoning, image.id,
                     std::vector<float>(params.zoning_dim(), 0.0f)};
    for (int zr = 0; zr < rows; ++zr) {
        const int r0 = zr * cell_h;
        const int r1 = (zr == rows - 1) ? image.height : (zr + 1) * cell_h;
        for (int zc = 0; zc < cols; ++zc) {
            const int c0 = zc * cell_w;
            const int c1 = (zc == cols - 1) ? image.width : (zc + 1) * cell_w;
            int64_t ink = 0;
            for (int r = r0; r < r1; ++r)
                for (int c = c0; c < c1; ++c)
                    if (image.ink(r, c)) ++ink;
            const int64_t area = static_cast<int64_t>(r1 - r0) * (c1 - c0);
            fv.values[static_cast<size_t>(zr) * cols + zc] =
                static_cast<float>(static_cast<double>(ink) / static_cast<double>(area));
        }
    }
    check_dim("zoning", fv.values.size(), params.zoning_dim());
    return fv;
}

FeatureSet extract_all(const ShapeImage& image, const DescriptorParams& params) {
    FeatureSet set;
    set.loci = extract_loci(image, params);
    set.fourier = extract_fourier(image, params);
    set.zoning = extract_zoning(image, params);

    check_dim("loci", set.loci.values.size(), params.loci_dim());
    check_dim("fourier", set.fourier.values.size(), params.fourier_dim());
    check_dim("zoning", set.zoning.values.size(), params.zoning_dim());

    set.concatenated.reserve(params.concat_dim());
    set.concatenated.insert(set.concatenated.end(), set.loci.values.begin(), set.loci.values.end());
    set.concatenated.insert(set.concatenated.end(), set.fourier.values.begin(), set.fourier.values.end());
    set.concatenated.insert(set.concatenated.end(), set.zoning.values.begin(), set.zoning.values.end());
    check_dim("concatenated", set.concatenated.size(), params.concat_dim());
    return set;
}

} // namespace lexred
