#include "lexred/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <set>

#include "lexred/error.hpp"
#include "lexred/png_io.hpp"

namespace fs = std::filesystem;

namespace lexred {

namespace {

constexpr uint8_t kInk = 0;
constexpr uint8_t kPaper = 255;

void fill_rect(GrayImage& img, int x0, int y0, int x1, int y1, uint8_t value) {
    x0 = std::max(x0, 0);
    y0 = std::max(y0, 0);
    x1 = std::min(x1, img.width);
    y1 = std::min(y1, img.height);
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) img.at(y, x) = value;
}

std::string two_digits(int v) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%02d", v);
    return buf;
}

} // namespace

LatticeSpec lattice_class_spec(int class_index) {
    // Bar-count pairs enumerated diagonally: (1,1), (1,2), (2,1), (1,3), ...
    int seen = 0;
    for (int sum = 2; sum <= 10; ++sum) {
        for (int v = 1; v < sum && v <= 5; ++v) {
            const int h = sum - v;
            if (h < 1 || h > 5) continue;
            if (seen == class_index) return {v, h};
            ++seen;
        }
    }
    throw DataError("lattice family supports at most 25 classes");
}

GrayImage render_lattice(const LatticeSpec& spec, Rng& rng) {
    const int margin = 3;
    const int w = rng.uniform_int(84, 108);
    const int h = rng.uniform_int(84, 108);
    const int frame = rng.uniform_int(3, 5);

    GrayImage img = GrayImage::filled(w + 2 * margin, h + 2 * margin, kPaper);
    auto box = [&](int x0, int y0, int x1, int y1) {
        fill_rect(img, margin + x0, margin + y0, margin + x1, margin + y1, kInk);
    };

    // Frame keeps everything one component and makes the outer contour a
    // plain rectangle for every class.
    box(0, 0, w, frame);
    box(0, h - frame, w, h);
    box(0, 0, frame, h);
    box(w - frame, 0, w, h);

    // Internal bars at near-even positions (small jitter) with strongly
    // jittered thickness.
    const double inner_w = w - 2.0 * frame;
    for (int i = 0; i < spec.vbars; ++i) {
        const double spacing = inner_w / (spec.vbars + 1);
        const double center = frame + spacing * (i + 1) + rng.uniform(-spacing / 6.0, spacing / 6.0);
        const int thickness = rng.uniform_int(3, 7);
        const int x0 = static_cast<int>(std::lround(center - thickness / 2.0));
        box(x0, 0, x0 + thickness, h);
    }
    const double inner_h = h - 2.0 * frame;
    for (int i = 0; i < spec.hbars; ++i) {
        const double spacing = inner_h / (spec.hbars + 1);
        const double center = frame + spacing * (i + 1) + rng.uniform(-spacing / 6.0, spacing / 6.0);
        const int thickness = rng.uniform_int(3, 7);
        const int y0 = static_cast<int>(std::lround(center - thickness / 2.0));
        box(0, y0, w, y0 + thickness);
    }
    return img;
}

BlobSpec blob_class_spec(int class_index, Rng& class_rng) {
    BlobSpec spec;
    spec.base_radius = 27.0;
    const int dominant = class_index % 4; // harmonic 2 + dominant
    for (int k = 0; k < 4; ++k) {
        spec.amp[k] = (k == dominant) ? 0.16 + 0.03 * (class_index / 4)
                                      : class_rng.uniform(0.01, 0.05);
        spec.phase[k] = class_rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    return spec;
}

GrayImage render_blob(const BlobSpec& spec, double scale, double rotation) {
    const double r0 = spec.base_radius * scale;
    double amp_sum = 0.0;
    for (double a : spec.amp) amp_sum += a;
    const double rmax = r0 * (1.0 + amp_sum + 0.03);
    const int size = 2 * static_cast<int>(std::ceil(rmax)) + 7;
    const double cx = (size - 1) / 2.0;
    const double cy = (size - 1) / 2.0;

    GrayImage img = GrayImage::filled(size, size, kPaper);
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double dx = x - cx;
            const double dy = y - cy;
            const double rho = std::sqrt(dx * dx + dy * dy);
            const double psi = std::atan2(dy, dx) - rotation;
            double r = 1.0;
            for (int k = 0; k < 4; ++k)
                r += spec.amp[k] * std::cos((k + 2) * psi + spec.phase[k]);
            if (rho <= r0 * r) img.at(y, x) = kInk;
        }
    }
    return img;
}

PlateSpec plate_class_spec(int class_index, Rng& family_rng) {
    // Hole patterns are drawn once per family in a fixed order, then reused
    // by index; classes 2p and 2p+1 share pattern p at two hole sizes.
    const int pattern_index = class_index / 2;
    Rng rng = family_rng.derive("plate-patterns");
    std::set<std::array<uint8_t, 9>> seen;
    std::array<uint8_t, 9> pattern{};
    for (int p = 0; p <= pattern_index; ++p) {
        for (int attempt = 0; attempt < 4096; ++attempt) {
            int open = 0;
            for (auto& cell : pattern) {
                cell = rng.coin() ? 1 : 0;
                open += cell;
            }
            if (open >= 3 && open <= 6 && !seen.count(pattern)) {
                seen.insert(pattern);
                break;
            }
        }
    }
    PlateSpec spec;
    spec.open = pattern;
    spec.hole_frac = (class_index % 2 == 0) ? 0.45 : 0.68;
    return spec;
}

GrayImage render_plate(const PlateSpec& spec, Rng& rng) {
    const int margin = 3;
    const int w = rng.uniform_int(88, 104);
    const int h = rng.uniform_int(88, 104);

    GrayImage img = GrayImage::filled(w + 2 * margin, h + 2 * margin, kPaper);
    fill_rect(img, margin, margin, margin + w, margin + h, kInk);

    const double border_x = w / 8.0;
    const double border_y = h / 8.0;
    const double cell_w = (w - 2.0 * border_x) / 3.0;
    const double cell_h = (h - 2.0 * border_y) / 3.0;
    for (int gy = 0; gy < 3; ++gy) {
        for (int gx = 0; gx < 3; ++gx) {
            if (!spec.open[gy * 3 + gx]) continue;
            const double frac = spec.hole_frac + rng.uniform(-0.03, 0.03);
            const double cx = border_x + cell_w * (gx + 0.5) + rng.uniform(-2.0, 2.0);
            const double cy = border_y + cell_h * (gy + 0.5) + rng.uniform(-2.0, 2.0);
            const int hw = std::max(2, static_cast<int>(std::lround(cell_w * frac)));
            const int hh = std::max(2, static_cast<int>(std::lround(cell_h * frac)));
            const int x0 = margin + static_cast<int>(std::lround(cx - hw / 2.0));
            const int y0 = margin + static_cast<int>(std::lround(cy - hh / 2.0));
            fill_rect(img, x0, y0, x0 + hw, y0 + hh, kPaper);
        }
    }
    return img;
}

CorpusManifest synthesize(const SynthConfig& config) {
    if (config.families < 1 || config.families > 3)
        throw DataError("families must be between 1 and 3");
    if (config.classes_per_family < 2)
        throw DataError("need at least 2 classes per family");
    if (config.samples_per_class < 2)
        throw DataError("need at least 2 samples per class");
    if (config.out_dir.empty()) throw DataError("output directory required");

    fs::create_directories(config.out_dir);
    const Rng root(config.seed);

    CorpusManifest manifest;
    for (int f = 0; f < config.families; ++f) {
        const char family_tag = static_cast<char>('a' + f);
        Rng family_rng = root.derive("family", static_cast<uint64_t>(f));
        for (int k = 0; k < config.classes_per_family; ++k) {
            const std::string label = family_tag + two_digits(k);
            const fs::path label_dir = fs::path(config.out_dir) / label;
            fs::create_directories(label_dir);

            LatticeSpec lattice;
            BlobSpec blob;
            PlateSpec plate;
            if (f == 0) {
                lattice = lattice_class_spec(k);
            } else if (f == 1) {
                Rng class_rng = family_rng.derive("class", static_cast<uint64_t>(k));
                blob = blob_class_spec(k, class_rng);
            } else {
                plate = plate_class_spec(k, family_rng);
            }

            for (int s = 0; s < config.samples_per_class; ++s) {
                const uint64_t index =
                    (static_cast<uint64_t>(f) * config.classes_per_family + k) *
                        static_cast<uint64_t>(config.samples_per_class) +
                    s;
                Rng sample_rng = root.derive("sample", index);

                GrayImage img;
                if (f == 0) {
                    img = render_lattice(lattice, sample_rng);
                } else if (f == 1) {
                    BlobSpec jittered = blob;
                    const double rotation = sample_rng.uniform(0.0, 2.0 * std::numbers::pi);
                    const double scale = sample_rng.uniform(1.0, 1.3);
                    for (double& a : jittered.amp)
                        a = std::max(0.0, a + sample_rng.uniform(-0.008, 0.008));
                    img = render_blob(jittered, scale, rotation);
                } else {
                    img = render_plate(plate, sample_rng);
                }

                const std::string file = "s" + two_digits(s) + ".png";
                write_png_gray((label_dir / file).string(), img);

                ManifestEntry e;
                e.id = label + "/s" + two_digits(s);
                e.path = label + "/" + file; // relative to out_dir
                e.label = label;
                manifest.entries.push_back(std::move(e));
            }
        }
    }

    std::sort(manifest.entries.begin(), manifest.entries.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; });
    assign_split(manifest, config.train_ratio, config.seed);
    save_manifest_csv(manifest, (fs::path(config.out_dir) / "manifest.csv").string());
    return manifest;
}

} // namespace lexred
