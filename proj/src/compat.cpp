#include "lexred/compat.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lexred/error.hpp"
#include "lexred/io_util.hpp"

namespace lexred {

double compute_cm(const SearchIndex& train_index, size_t sample_index, DescriptorId descriptor) {
    const FeatureStore& store = train_index.store();
    const FeatureBlock block = block_of(descriptor);
    const RetrievalList list =
        train_index.rank(block, store.block_row(block, sample_index), store.id(sample_index),
                         &store.label(sample_index));
    return dcg(list.relevance, list.relevant_total);
}

std::vector<CompatibilityRecord> label_training_set(const SearchIndex& train_index) {
    const FeatureStore& store = train_index.store();
    std::vector<CompatibilityRecord> records(store.size());
    for (size_t i = 0; i < store.size(); ++i) {
        CompatibilityRecord& rec = records[i];
        rec.image_id = store.id(i);
        for (DescriptorId d : kAllDescriptors)
            rec.cm[static_cast<size_t>(d)] = compute_cm(train_index, i, d);
        rec.best = DescriptorId::Loci;
        for (DescriptorId d : kAllDescriptors)
            if (rec.cm_of(d) > rec.cm_of(rec.best)) rec.best = d;
    }
    return records;
}

void save_labels_csv(const std::vector<CompatibilityRecord>& records, const std::string& path) {
    std::ostringstream out;
    out << "image_id,cm_loci,cm_fourier,cm_zoning,best\n";
    for (const auto& rec : records) {
        out << rec.image_id;
        for (double v : rec.cm) out << ',' << fmt_fixed(v, 9);
        out << ',' << to_string(rec.best) << '\n';
    }
    write_text_file(path, out.str());
}

std::vector<CompatibilityRecord> load_labels_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open labels file: " + path);
    std::string line;
    if (!std::getline(in, line) ||
        (line != "image_id,cm_loci,cm_fourier,cm_zoning,best" &&
         line != "image_id,cm_loci,cm_fourier,cm_zoning,best\r"))
        throw DataError("labels header must be image_id,cm_loci,cm_fourier,cm_zoning,best: " + path);

    std::vector<CompatibilityRecord> records;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string cur;
        for (char ch : line) {
            if (ch == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        fields.push_back(cur);
        if (fields.size() != 5)
            throw DataError(path + ":" + std::to_string(lineno) + ": expected 5 fields");

        CompatibilityRecord rec;
        rec.image_id = fields[0];
        for (int d = 0; d < 3; ++d) {
            const std::string& f = fields[1 + d];
            double v = 0.0;
            const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
            if (res.ec != std::errc() || res.ptr != f.data() + f.size())
                throw DataError(path + ":" + std::to_string(lineno) + ": bad cm value '" + f + "'");
            rec.cm[d] = v;
        }
        const auto best = descriptor_from_string(fields[4]);
        if (!best)
            throw DataError(path + ":" + std::to_string(lineno) + ": unknown descriptor '" +
                            fields[4] + "'");
        rec.best = *best;
        records.push_back(std::move(rec));
    }
    if (records.empty()) throw DataError("labels file lists no samples: " + path);
    return records;
}

void save_cm_curves(const std::vector<CompatibilityRecord>& records, const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (DescriptorId d : kAllDescriptors) {
        std::vector<double> values;
        values.reserve(records.size());
        for (const auto& rec : records) values.push_back(rec.cm_of(d));
        std::sort(values.begin(), values.end(), std::greater<>());

        std::ostringstream out;
        out << "rank,cm\n";
        for (size_t i = 0; i < values.size(); ++i)
            out << (i + 1) << ',' << fmt_fixed(values[i], 9) << '\n';
        write_text_file((std::filesystem::path(dir) /
                         ("cm_curve_" + std::string(to_string(d)) + ".csv"))
                            .string(),
                        out.str());
    }
}

} // namespace lexred
