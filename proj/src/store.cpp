#include "lexred/store.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>

#include "lexred/error.hpp"
#include "lexred/io_util.hpp"
#include "lexred/png_io.hpp"
#include "lexred/rng.hpp"

namespace fs = std::filesystem;

namespace lexred {

namespace {
constexpr char kStoreMagic[4] = {'L', 'X', 'F', 'S'};
constexpr uint32_t kStoreVersion = 1;
} // namespace

std::span<const float> FeatureStore::concat_row(size_t i) const {
    const size_t dim = params_.concat_dim();
    return {features_.data() + i * dim, dim};
}

std::span<const float> FeatureStore::block_row(FeatureBlock block, size_t i) const {
    const size_t dim = params_.concat_dim();
    return {features_.data() + i * dim + params_.offset(block), params_.dim(block)};
}

int FeatureStore::find_label(const std::string& label) const {
    const auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return -1;
    return static_cast<int>(it - labels_.begin());
}

int FeatureStore::find_id(const std::string& id) const {
    const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return -1;
    return static_cast<int>(it - ids_.begin());
}

void StoreBuilder::add(const std::string& id, const std::string& label,
                       const FeatureSet& features) {
    if (features.concatenated.size() != store_.params_.concat_dim())
        throw DataError("feature set dimension mismatch for sample " + id);
    store_.ids_.push_back(id);
    store_.labels_.push_back(label); // raw labels; build() compacts them
    store_.features_.insert(store_.features_.end(), features.concatenated.begin(),
                            features.concatenated.end());
}

FeatureStore StoreBuilder::build() {
    if (built_) throw std::logic_error("StoreBuilder::build called twice");
    built_ = true;

    const size_t n = store_.ids_.size();
    const size_t dim = store_.params_.concat_dim();

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return store_.ids_[a] < store_.ids_[b]; });
    for (size_t i = 1; i < n; ++i)
        if (store_.ids_[order[i]] == store_.ids_[order[i - 1]])
            throw DataError("duplicate sample id: " + store_.ids_[order[i]]);

    std::vector<std::string> raw_labels = std::move(store_.labels_);
    std::vector<std::string> sorted_labels = raw_labels;
    std::sort(sorted_labels.begin(), sorted_labels.end());
    sorted_labels.erase(std::unique(sorted_labels.begin(), sorted_labels.end()),
                        sorted_labels.end());

    FeatureStore out;
    out.params_ = store_.params_;
    out.labels_ = std::move(sorted_labels);
    out.ids_.resize(n);
    out.label_index_.resize(n);
    out.label_counts_.assign(out.labels_.size(), 0);
    out.features_.resize(n * dim);
    for (size_t i = 0; i < n; ++i) {
        const size_t src = order[i];
        out.ids_[i] = std::move(store_.ids_[src]);
        const auto it = std::lower_bound(out.labels_.begin(), out.labels_.end(), raw_labels[src]);
        out.label_index_[i] = static_cast<uint32_t>(it - out.labels_.begin());
        out.label_counts_[out.label_index_[i]]++;
        std::copy_n(store_.features_.begin() + static_cast<ptrdiff_t>(src * dim), dim,
                    out.features_.begin() + static_cast<ptrdiff_t>(i * dim));
    }
    store_ = FeatureStore{};
    return out;
}

void save_store(const FeatureStore& store, const std::string& path) {
    std::vector<uint8_t> buf;
    put_bytes(buf, kStoreMagic, 4);
    put_u32(buf, kStoreVersion);
    const DescriptorParams& p = store.params();
    put_u32(buf, p.loci_cap);
    put_u32(buf, p.fourier_points);
    put_u32(buf, p.fourier_pairs);
    put_u32(buf, p.zoning_rows);
    put_u32(buf, p.zoning_cols);
    put_u32(buf, p.loci_dim());
    put_u32(buf, p.fourier_dim());
    put_u32(buf, p.zoning_dim());
    put_u32(buf, p.concat_dim());

    put_u32(buf, static_cast<uint32_t>(store.labels().size()));
    for (const auto& label : store.labels()) put_string(buf, label);

    put_u32(buf, static_cast<uint32_t>(store.size()));
    for (size_t i = 0; i < store.size(); ++i) {
        put_string(buf, store.id(i));
        put_u32(buf, store.label_index(i));
        for (float v : store.concat_row(i)) put_f32(buf, v);
    }
    write_file_bytes(path, buf);
}

FeatureStore load_store(const std::string& path) {
    const auto bytes = read_file_bytes(path);
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kStoreMagic, 4) != 0)
        throw DataError("not a feature store: " + path);
    ByteReader in(bytes, path);
    in.u32(); // magic, already checked
    const uint32_t version = in.u32();
    if (version != kStoreVersion)
        throw DataError("feature store version " + std::to_string(version) +
                        " unsupported (this build reads version " +
                        std::to_string(kStoreVersion) + "): " + path);

    FeatureStore store;
    store.params_.loci_cap = in.u32();
    store.params_.fourier_points = in.u32();
    store.params_.fourier_pairs = in.u32();
    store.params_.zoning_rows = in.u32();
    store.params_.zoning_cols = in.u32();
    const uint32_t dims[4] = {in.u32(), in.u32(), in.u32(), in.u32()};
    if (dims[0] != store.params_.loci_dim() || dims[1] != store.params_.fourier_dim() ||
        dims[2] != store.params_.zoning_dim() || dims[3] != store.params_.concat_dim())
        throw DataError("feature store header dims disagree with parameters: " + path);

    const uint32_t n_labels = in.u32();
    store.labels_.reserve(n_labels);
    for (uint32_t i = 0; i < n_labels; ++i) store.labels_.push_back(in.str());
    if (!std::is_sorted(store.labels_.begin(), store.labels_.end()))
        throw DataError("feature store label table not sorted: " + path);

    const uint32_t n = in.u32();
    const size_t dim = store.params_.concat_dim();
    store.ids_.reserve(n);
    store.label_index_.reserve(n);
    store.label_counts_.assign(n_labels, 0);
    store.features_.resize(static_cast<size_t>(n) * dim);
    for (uint32_t i = 0; i < n; ++i) {
        store.ids_.push_back(in.str());
        const uint32_t li = in.u32();
        if (li >= n_labels) throw DataError("feature store label index out of range: " + path);
        store.label_index_.push_back(li);
        store.label_counts_[li]++;
        in.f32_array(store.features_.data() + static_cast<size_t>(i) * dim, dim);
    }
    if (!in.at_end()) throw DataError("trailing bytes in feature store: " + path);
    if (!std::is_sorted(store.ids_.begin(), store.ids_.end()))
        throw DataError("feature store rows not sorted by id: " + path);
    return store;
}

uint64_t NormStats::hash() const {
    uint64_t h = fnv1a64(mean.data(), mean.size() * sizeof(float));
    h ^= fnv1a64(stddev.data(), stddev.size() * sizeof(float)) * 0x100000001b3ull;
    return h;
}

void NormStats::normalize(std::span<const float> raw, float* out) const {
    for (size_t i = 0; i < raw.size(); ++i) out[i] = (raw[i] - mean[i]) / stddev[i];
}

NormStats compute_stats(const FeatureStore& train_store) {
    const size_t n = train_store.size();
    if (n == 0) throw DataError("cannot compute statistics of an empty store");
    const size_t dim = train_store.params().concat_dim();

    std::vector<double> sum(dim, 0.0), sumsq(dim, 0.0);
    for (size_t i = 0; i < n; ++i) {
        const auto row = train_store.concat_row(i);
        for (size_t d = 0; d < dim; ++d) {
            sum[d] += row[d];
            sumsq[d] += static_cast<double>(row[d]) * row[d];
        }
    }
    NormStats stats;
    stats.mean.resize(dim);
    stats.stddev.resize(dim);
    for (size_t d = 0; d < dim; ++d) {
        const double mean = sum[d] / static_cast<double>(n);
        const double var = std::max(0.0, sumsq[d] / static_cast<double>(n) - mean * mean);
        stats.mean[d] = static_cast<float>(mean);
        stats.stddev[d] = static_cast<float>(std::max(std::sqrt(var), 1e-8));
    }
    return stats;
}

StoreBuildResult build_feature_stores(const CorpusManifest& manifest,
                                      const std::string& base_dir,
                                      const DescriptorParams& params) {
    StoreBuildResult result;
    StoreBuilder train(params);
    StoreBuilder test(params);
    for (const auto& entry : manifest.entries) {
        fs::path p(entry.path);
        if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
        try {
            const GrayImage raw = read_png_gray(p.string());
            ShapeImage shape = preprocess(raw);
            shape.id = entry.id;
            shape.label = entry.label;
            const FeatureSet features = extract_all(shape, params);
            (entry.split == Split::train ? train : test).add(entry.id, entry.label, features);
        } catch (const DataError& err) {
            result.diagnostics.push_back(entry.id + " (" + p.string() + "): " + err.what());
        }
    }
    result.train = train.build();
    result.test = test.build();
    if (result.train.size() == 0) throw DataError("no training samples survived extraction");
    return result;
}

} // namespace lexred
