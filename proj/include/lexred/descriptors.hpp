#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexred/raster.hpp"

namespace lexred {

enum class DescriptorId : uint8_t { Loci = 0, Fourier = 1, Zoning = 2 };

inline constexpr std::array<DescriptorId, 3> kAllDescriptors = {
    DescriptorId::Loci, DescriptorId::Fourier, DescriptorId::Zoning};

const char* to_string(DescriptorId id);
std::optional<DescriptorId> descriptor_from_string(std::string_view name);

// A feature slice of the store: one of the three descriptors, or all of
// them concatenated (selector input and the concatenation baseline).
enum class FeatureBlock : uint8_t { Loci = 0, Fourier = 1, Zoning = 2, Concatenated = 3 };

inline FeatureBlock block_of(DescriptorId id) { return static_cast<FeatureBlock>(id); }
const char* to_string(FeatureBlock block);

// Extraction parameters. Pinned so feature stores and selector models built
// from the same settings are interchangeable; artifacts carry this block
// and compare hashes before mixing.
struct DescriptorParams {
    uint32_t loci_cap = 2;          // ray-crossing count clamp per direction
    uint32_t fourier_points = 128;  // resampled contour length
    uint32_t fourier_pairs = 16;    // +/-m harmonic pairs kept
    uint32_t zoning_rows = 8;
    uint32_t zoning_cols = 8;

    uint32_t loci_dim() const {
        const uint32_t base = loci_cap + 1;
        return base * base * base * base;
    }
    uint32_t fourier_dim() const { return 2 * fourier_pairs; }
    uint32_t zoning_dim() const { return zoning_rows * zoning_cols; }
    uint32_t concat_dim() const { return loci_dim() + fourier_dim() + zoning_dim(); }

    uint32_t dim(FeatureBlock block) const;
    // Offset of a block inside the concatenated layout (Loci | Fourier | Zoning).
    uint32_t offset(FeatureBlock block) const;

    uint64_t hash() const;
    bool operator==(const DescriptorParams&) const = default;
};

struct FeatureVector {
    DescriptorId descriptor;
    std::string image_id;
    std::vector<float> values;
};

struct FeatureSet {
    FeatureVector loci;
    FeatureVector fourier;
    FeatureVector zoning;
    std::vector<float> concatenated; // loci | fourier | zoning
};

// Characteristic loci: for every background pixel, count the ink runs a ray
// crosses going up/down/left/right (a run of consecutive ink pixels is one
// crossing), clamp each count, and histogram the 4-digit code
// c_up*27 + c_down*9 + c_left*3 + c_right. Normalized to sum to 1; the
// all-ink image yields the zero vector.
FeatureVector extract_loci(const ShapeImage& image, const DescriptorParams& params = {});

// Fourier descriptor: Moore-trace the outer boundary clockwise from the
// topmost-leftmost ink pixel, resample to fourier_points by arc length,
// DFT, keep |Z(+1)|,|Z(-1)|,...,|Z(+pairs)|,|Z(-pairs)| and divide by
// |Z(+1)| (largest magnitude as fallback when |Z(+1)| < 1e-9).
// Throws DataError("degenerate contour") for boundaries shorter than 8.
FeatureVector extract_fourier(const ShapeImage& image, const DescriptorParams& params = {});

// Zoning: ink density over a rows x cols partition of the raster; cell size
// is floor(extent/cells) with the remainder folded into the last row/column.
FeatureVector extract_zoning(const ShapeImage& image, const DescriptorParams& params = {});

FeatureSet extract_all(const ShapeImage& image, const DescriptorParams& params = {});

// Contour pixels as (x, y) relative to the ink bounding-box origin, in
// clockwise trace order. Exposed for the Fourier descriptor and tests.
std::vector<std::pair<int, int>> trace_outer_boundary(const ShapeImage& image);

} // namespace lexred
