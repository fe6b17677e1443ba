#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lexred/corpus.hpp"
#include "lexred/descriptors.hpp"

namespace lexred {

// Immutable set of extracted features for one manifest split. Samples are
// ordered by ascending id, so row index order is id order.
class FeatureStore {
public:
    FeatureStore() = default;

    const DescriptorParams& params() const { return params_; }
    size_t size() const { return ids_.size(); }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& id(size_t i) const { return ids_[i]; }
    uint32_t label_index(size_t i) const { return label_index_[i]; }
    const std::string& label(size_t i) const { return labels_[label_index_[i]]; }

    // Row of the concatenated feature matrix (all blocks are slices of it).
    std::span<const float> concat_row(size_t i) const;
    std::span<const float> block_row(FeatureBlock block, size_t i) const;
    const std::vector<float>& concat_matrix() const { return features_; }

    // Count of samples carrying a label.
    size_t label_count(uint32_t label_index) const { return label_counts_[label_index]; }
    // -1 when the label is unknown to this store.
    int find_label(const std::string& label) const;
    // -1 when the id is absent.
    int find_id(const std::string& id) const;

private:
    friend class StoreBuilder;
    friend FeatureStore load_store(const std::string& path);

    DescriptorParams params_;
    std::vector<std::string> labels_;       // sorted unique
    std::vector<std::string> ids_;          // ascending
    std::vector<uint32_t> label_index_;
    std::vector<size_t> label_counts_;
    std::vector<float> features_;           // size() x concat_dim, row-major
};

class StoreBuilder {
public:
    explicit StoreBuilder(const DescriptorParams& params = {}) { store_.params_ = params; }

    void add(const std::string& id, const std::string& label, const FeatureSet& features);
    // Sorts by id, builds the label table; throws DataError on duplicate ids.
    FeatureStore build();

private:
    FeatureStore store_;
    bool built_ = false;
};

void save_store(const FeatureStore& store, const std::string& path);
FeatureStore load_store(const std::string& path);

// Per-dimension z-score statistics over a training store's concatenated
// features. Stddev entries are floored at 1e-8.
struct NormStats {
    std::vector<float> mean;
    std::vector<float> stddev;

    uint64_t hash() const;
    void normalize(std::span<const float> raw, float* out) const;
};

NormStats compute_stats(const FeatureStore& train_store);

// Preprocess + extract every manifest entry. Entries that fail to load or
// preprocess are reported in diagnostics and skipped.
struct StoreBuildResult {
    FeatureStore train;
    FeatureStore test;
    std::vector<std::string> diagnostics;
};

StoreBuildResult build_feature_stores(const CorpusManifest& manifest,
                                      const std::string& base_dir,
                                      const DescriptorParams& params = {});

} // namespace lexred
