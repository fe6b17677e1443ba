#pragma once

#include <array>
#include <string>
#include <vector>

#include "lexred/retrieval.hpp"

namespace lexred {

// Per-training-sample descriptor compatibility: the DCG obtained when each
// descriptor retrieves the sample's class members from the training store
// (the sample itself stays in the lexicon and matches at rank 1).
struct CompatibilityRecord {
    std::string image_id;
    std::array<double, 3> cm{}; // indexed by DescriptorId
    DescriptorId best = DescriptorId::Loci;

    double cm_of(DescriptorId d) const { return cm[static_cast<size_t>(d)]; }
};

double compute_cm(const SearchIndex& train_index, size_t sample_index, DescriptorId descriptor);

// One record per training sample, in id order. Ties at the maximum resolve
// to the earlier descriptor in the fixed order loci < fourier < zoning.
std::vector<CompatibilityRecord> label_training_set(const SearchIndex& train_index);

// CSV image_id,cm_loci,cm_fourier,cm_zoning,best.
void save_labels_csv(const std::vector<CompatibilityRecord>& records, const std::string& path);
std::vector<CompatibilityRecord> load_labels_csv(const std::string& path);

// Per-descriptor CM values sorted descending, one CSV (rank,cm) per
// descriptor: cm_curve_loci.csv etc. under the given directory.
void save_cm_curves(const std::vector<CompatibilityRecord>& records, const std::string& dir);

} // namespace lexred
