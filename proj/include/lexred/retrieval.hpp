#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lexred/store.hpp"

namespace lexred {

struct RankedEntry {
    uint32_t index;  // row in the lexicon store
    double distance; // Euclidean, on z-scored features
};

struct RetrievalList {
    std::string query_id;
    std::vector<RankedEntry> ranked;  // non-decreasing distance, ties by id
    std::vector<uint8_t> relevance;   // per rank; empty when the label is unknown
    uint32_t relevant_total = 0;      // C: lexicon samples sharing the query label
};

// Brute-force exact search over a feature store. Features are z-scored with
// statistics computed from the store itself (the training split); the store
// is immutable after construction so queries may run concurrently.
class SearchIndex {
public:
    explicit SearchIndex(FeatureStore store);

    const FeatureStore& store() const { return store_; }
    const NormStats& stats() const { return stats_; }
    size_t size() const { return store_.size(); }

    // Full exact ranking of raw (un-normalized) query features against one
    // block. Ties at equal distance resolve by ascending sample id. Pass the
    // query label to get the binary relevance list and C.
    RetrievalList rank(FeatureBlock block, std::span<const float> raw_query,
                       const std::string& query_id, const std::string* query_label) const;

    // Normalized row of the store (for reusing stored samples as queries).
    std::span<const float> normalized_row(FeatureBlock block, size_t i) const;

private:
    FeatureStore store_;
    NormStats stats_;
    std::vector<float> normalized_; // size() x concat_dim
};

// Normalized discounted cumulative gain over a binary relevance list:
// credit 1 at rank 1, 1/log2(i) at rank i >= 2, divided by the ideal
// ranking's total for C relevant items. Throws DataError when C == 0.
double dcg(std::span<const uint8_t> relevance, uint32_t relevant_count);

struct PrPoint {
    double precision = 0.0;
    double recall = 0.0;
};

// Precision and recall of the first n ranks (1 <= n <= length).
PrPoint precision_recall(std::span<const uint8_t> relevance, uint32_t relevant_count, size_t n);

// (N - n) / N.
double degree_of_reduction(size_t lexicon_size, size_t n);

// Per-query evaluation summary across a cutoff grid.
struct MetricReport {
    double dcg = 0.0;
    std::map<size_t, double> precision_at;
    std::map<size_t, double> recall_at;
    std::map<size_t, double> dor_at;
};

MetricReport evaluate_list(const RetrievalList& list, std::span<const size_t> n_grid);

} // namespace lexred
