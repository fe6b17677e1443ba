#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lexred/raster.hpp"

namespace lexred {

enum class Split : uint8_t { train = 0, test = 1 };

const char* to_string(Split s);

struct ManifestEntry {
    std::string id;    // unique; <label>/<file stem> for directory ingestion
    std::string path;
    std::string label;
    Split split = Split::train;
};

struct CorpusManifest {
    std::vector<ManifestEntry> entries; // sorted by path
    double train_ratio = 0.75;
    uint64_t seed = 0;

    size_t count(Split s) const;
    std::vector<std::string> distinct_labels() const; // sorted
};

struct IngestReport {
    CorpusManifest manifest;
    std::vector<std::string> diagnostics; // unreadable files, one line each
};

// Build a manifest from a directory tree. If <directory>/manifest.csv exists
// it is taken as the labeling; otherwise each immediate subdirectory names a
// label and its files are samples. Unreadable images become diagnostics, not
// silent drops. Throws DataError for an empty corpus or duplicate ids.
IngestReport ingest(const std::string& directory, double train_ratio, uint64_t seed);

// Assign train/test tags: per-label quotas by largest remainder against
// round(ratio*N), at least one training sample per label (so every test
// label appears in train), seeded shuffle within each label.
void assign_split(CorpusManifest& manifest, double train_ratio, uint64_t seed);

// CSV with header id,path,label,split, UTF-8, LF line endings.
void save_manifest_csv(const CorpusManifest& manifest, const std::string& path);
CorpusManifest load_manifest_csv(const std::string& path);

} // namespace lexred
