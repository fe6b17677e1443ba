#include "lexred/retrieval.hpp"

#include <algorithm>
#include <cmath>

#include "lexred/error.hpp"
#include "lexred/kernels.hpp"

namespace lexred {

SearchIndex::SearchIndex(FeatureStore store)
    : store_(std::move(store)), stats_(compute_stats(store_)) {
    const size_t dim = store_.params().concat_dim();
    normalized_.resize(store_.size() * dim);
    for (size_t i = 0; i < store_.size(); ++i)
        stats_.normalize(store_.concat_row(i), normalized_.data() + i * dim);
}

std::span<const float> SearchIndex::normalized_row(FeatureBlock block, size_t i) const {
    const size_t dim = store_.params().concat_dim();
    return {normalized_.data() + i * dim + store_.params().offset(block),
            store_.params().dim(block)};
}

RetrievalList SearchIndex::rank(FeatureBlock block, std::span<const float> raw_query,
                                const std::string& query_id,
                                const std::string* query_label) const {
    const DescriptorParams& p = store_.params();
    const uint32_t dim = p.dim(block);
    if (raw_query.size() != dim)
        throw DataError("query dimension " + std::to_string(raw_query.size()) +
                        " does not match " + std::string(to_string(block)) + " block dimension " +
                        std::to_string(dim));
    if (store_.size() == 0) throw DataError("lexicon store is empty");

    std::vector<float> query(dim);
    const uint32_t offset = p.offset(block);
    for (uint32_t d = 0; d < dim; ++d)
        query[d] = (raw_query[d] - stats_.mean[offset + d]) / stats_.stddev[offset + d];

    const size_t stride = p.concat_dim();
    RetrievalList list;
    list.query_id = query_id;
    list.ranked.resize(store_.size());
    for (size_t i = 0; i < store_.size(); ++i) {
        const float* row = normalized_.data() + i * stride + offset;
        list.ranked[i] = {static_cast<uint32_t>(i), kernels::l2sq(query.data(), row, dim)};
    }
    // Rows are stored in ascending id order, so index order is id order.
    std::sort(list.ranked.begin(), list.ranked.end(),
              [](const RankedEntry& a, const RankedEntry& b) {
                  if (a.distance != b.distance) return a.distance < b.distance;
                  return a.index < b.index;
              });
    for (auto& e : list.ranked) e.distance = std::sqrt(e.distance);

    if (query_label) {
        const int label_idx = store_.find_label(*query_label);
        list.relevance.resize(list.ranked.size(), 0);
        if (label_idx >= 0) {
            list.relevant_total = static_cast<uint32_t>(store_.label_count(label_idx));
            for (size_t i = 0; i < list.ranked.size(); ++i)
                list.relevance[i] =
                    store_.label_index(list.ranked[i].index) == static_cast<uint32_t>(label_idx);
        }
    }
    return list;
}

double dcg(std::span<const uint8_t> relevance, uint32_t relevant_count) {
    if (relevant_count == 0) throw DataError("query class absent from lexicon");
    uint64_t hits = 0;
    for (uint8_t g : relevance) hits += g != 0;
    if (hits > relevant_count)
        throw DataError("relevance list contains more hits than the class size");

    double acc = relevance.empty() ? 0.0 : (relevance[0] ? 1.0 : 0.0);
    for (size_t i = 2; i <= relevance.size(); ++i)
        if (relevance[i - 1]) acc += 1.0 / std::log2(static_cast<double>(i));

    double ideal = 1.0;
    for (uint32_t j = 2; j <= relevant_count; ++j)
        ideal += 1.0 / std::log2(static_cast<double>(j));
    return acc / ideal;
}

PrPoint precision_recall(std::span<const uint8_t> relevance, uint32_t relevant_count, size_t n) {
    if (n < 1 || n > relevance.size())
        throw DataError("cutoff n out of range: " + std::to_string(n));
    if (relevant_count == 0) throw DataError("query class absent from lexicon");
    uint64_t hits = 0;
    for (size_t i = 0; i < n; ++i) hits += relevance[i] != 0;
    return {static_cast<double>(hits) / static_cast<double>(n),
            static_cast<double>(hits) / static_cast<double>(relevant_count)};
}

double degree_of_reduction(size_t lexicon_size, size_t n) {
    if (n < 1 || n > lexicon_size)
        throw DataError("cutoff n out of range: " + std::to_string(n));
    return static_cast<double>(lexicon_size - n) / static_cast<double>(lexicon_size);
}

MetricReport evaluate_list(const RetrievalList& list, std::span<const size_t> n_grid) {
    MetricReport report;
    report.dcg = dcg(list.relevance, list.relevant_total);
    for (size_t n : n_grid) {
        const PrPoint pr = precision_recall(list.relevance, list.relevant_total, n);
        report.precision_at[n] = pr.precision;
        report.recall_at[n] = pr.recall;
        report.dor_at[n] = degree_of_reduction(list.ranked.size(), n);
    }
    return report;
}

} // namespace lexred
