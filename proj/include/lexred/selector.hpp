#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lexred/compat.hpp"
#include "lexred/store.hpp"

namespace lexred {

struct Prediction {
    DescriptorId best = DescriptorId::Loci;
    std::array<double, 3> prob{};
};

// Trained descriptor selector: 177 concatenated features -> 3-way choice.
// Serialized as one versioned artifact together with the normalization
// statistics and descriptor parameters it was trained against.
struct SelectorModel {
    uint32_t version = 1;
    DescriptorParams params;
    NormStats stats;
    uint32_t input_dim = 0;
    uint32_t hidden_dim = 0;
    uint32_t output_dim = 0;
    std::vector<float> w1, b1, w2, b2;

    // Softmax over the forward pass; exact probability ties resolve to the
    // earlier descriptor. Throws DataError on non-finite input.
    Prediction predict(std::span<const float> raw_concat) const;
};

struct TrainOptions {
    uint64_t seed = 0;
    size_t hidden_dim = 64;
    size_t batch_size = 32;
    double learning_rate = 0.01;
    size_t max_epochs = 200;
    size_t patience = 20;        // epochs without holdout improvement
    double holdout_fraction = 0.10;
};

struct EpochRecord {
    size_t epoch;
    double learning_rate;
    double train_loss;
    double holdout_accuracy;
};

struct TrainReport {
    double holdout_accuracy = 0.0;
    std::array<std::array<uint32_t, 3>, 3> confusion{}; // [true][predicted]
    size_t epochs_run = 0;
    std::vector<EpochRecord> history;
    std::array<size_t, 3> label_counts{};
};

// Train on the training store's concatenated features against the CM labels.
// Deterministic for a fixed (store, labels, seed): single-threaded double
// arithmetic, hand-rolled shuffles, weights rounded to f32 once at the end.
// Throws DataError when any descriptor class is absent or a class has fewer
// than 3 samples.
SelectorModel train_selector(const FeatureStore& train_store,
                             const std::vector<CompatibilityRecord>& labels,
                             const TrainOptions& options, TrainReport* report = nullptr);

// Versioned little-endian binary: magic LXRD, dims, stats, f32 matrices.
void save_model(const SelectorModel& model, const std::string& path);
SelectorModel load_model(const std::string& path);

// Confusion matrix + accuracy as CSV.
void save_train_report_csv(const TrainReport& report, const std::string& path);

} // namespace lexred
