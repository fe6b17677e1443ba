#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "lexred/corpus.hpp"
#include "lexred/raster.hpp"
#include "lexred/rng.hpp"

namespace lexred {

// Seeded synthetic corpus with three shape families whose within-class
// variation is tuned so that each family is retrieved best by a different
// descriptor:
//   a: connected bar lattices. Bar counts are the class signature (a
//      ray-crossing property); bar thickness varies freely per sample, which
//      scrambles zone densities, and the outer contour is always a rectangle.
//   b: smooth star-shaped blobs from low contour harmonics, rotated
//      uniformly per sample. Harmonic magnitudes survive rotation; grid and
//      crossing statistics do not.
//   c: solid plates with a 3x3 grid of rectangular holes. Classes pair the
//      same hole pattern at two hole sizes, so cell densities separate them
//      while clamped crossing counts and the rectangular contour do not.
struct SynthConfig {
    std::string out_dir;
    int families = 3;           // 1..3, in the order a, b, c
    int classes_per_family = 10;
    int samples_per_class = 10;
    uint64_t seed = 42;
    double train_ratio = 0.75;
};

// Render the corpus under out_dir (<label>/<sample>.png), assign the
// train/test split, write out_dir/manifest.csv with paths relative to
// out_dir, and return the manifest. Identical (config, seed) produce
// byte-identical files.
CorpusManifest synthesize(const SynthConfig& config);

// Per-family building blocks, exposed for tests.

struct LatticeSpec {
    int vbars = 1; // internal bars, excluding the frame
    int hbars = 1;
};
LatticeSpec lattice_class_spec(int class_index);
GrayImage render_lattice(const LatticeSpec& spec, Rng& sample_rng);

struct BlobSpec {
    double base_radius = 27.0;
    std::array<double, 4> amp{};   // contour harmonics 2..5
    std::array<double, 4> phase{};
};
BlobSpec blob_class_spec(int class_index, Rng& class_rng);
GrayImage render_blob(const BlobSpec& spec, double scale, double rotation);

struct PlateSpec {
    std::array<uint8_t, 9> open{}; // 3x3 hole grid, row-major
    double hole_frac = 0.45;       // hole extent relative to its grid cell
};
PlateSpec plate_class_spec(int class_index, Rng& family_rng);
GrayImage render_plate(const PlateSpec& spec, Rng& sample_rng);

} // namespace lexred
