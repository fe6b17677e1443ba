#include "lexred/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lexred/error.hpp"
#include "lexred/io_util.hpp"
#include "lexred/png_io.hpp"
#include "lexred/rng.hpp"

namespace fs = std::filesystem;

namespace lexred {

const char* to_string(Split s) { return s == Split::train ? "train" : "test"; }

size_t CorpusManifest::count(Split s) const {
    size_t n = 0;
    for (const auto& e : entries)
        if (e.split == s) ++n;
    return n;
}

std::vector<std::string> CorpusManifest::distinct_labels() const {
    std::set<std::string> labels;
    for (const auto& e : entries) labels.insert(e.label);
    return {labels.begin(), labels.end()};
}

namespace {

void check_no_separator(const std::string& field, const std::string& what) {
    if (field.find(',') != std::string::npos || field.find('\n') != std::string::npos ||
        field.find('\r') != std::string::npos)
        throw DataError(what + " may not contain commas or line breaks: " + field);
}

void check_unique_ids(const CorpusManifest& m) {
    std::set<std::string> seen;
    for (const auto& e : m.entries)
        if (!seen.insert(e.id).second) throw DataError("duplicate sample id: " + e.id);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

IngestReport ingest(const std::string& directory, double train_ratio, uint64_t seed) {
    if (!fs::is_directory(directory)) throw DataError("not a directory: " + directory);

    IngestReport report;
    const fs::path root(directory);
    const fs::path manifest_path = root / "manifest.csv";

    std::vector<std::pair<std::string, std::string>> candidates; // (path, label)
    if (fs::is_regular_file(manifest_path)) {
        CorpusManifest listed = load_manifest_csv(manifest_path.string());
        for (const auto& e : listed.entries) {
            fs::path p(e.path);
            if (p.is_relative()) p = root / p;
            candidates.emplace_back(p.string(), e.label);
        }
    } else {
        for (const auto& dirent : fs::directory_iterator(root)) {
            if (!dirent.is_directory()) {
                if (dirent.is_regular_file())
                    report.diagnostics.push_back(dirent.path().string() +
                                                 ": no label folder, skipped");
                continue;
            }
            const std::string label = dirent.path().filename().string();
            for (const auto& f : fs::directory_iterator(dirent.path())) {
                if (f.is_regular_file()) candidates.emplace_back(f.path().string(), label);
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());

    for (const auto& [path, label] : candidates) {
        try {
            GrayImage img = read_png_gray(path);
            if (img.pixels.empty()) throw DataError("empty image");
            ManifestEntry e;
            e.path = path;
            e.label = label;
            e.id = label + "/" + fs::path(path).stem().string();
            report.manifest.entries.push_back(std::move(e));
        } catch (const DataError& err) {
            report.diagnostics.push_back(path + ": " + err.what());
        }
    }

    if (report.manifest.entries.empty())
        throw DataError("no readable images under " + directory);
    check_unique_ids(report.manifest);
    assign_split(report.manifest, train_ratio, seed);
    return report;
}

void assign_split(CorpusManifest& manifest, double train_ratio, uint64_t seed) {
    if (train_ratio <= 0.0 || train_ratio > 1.0)
        throw DataError("train ratio must be in (0, 1]");
    manifest.train_ratio = train_ratio;
    manifest.seed = seed;

    const size_t total = manifest.entries.size();
    if (total == 0) throw DataError("empty manifest");

    std::map<std::string, std::vector<size_t>> by_label;
    for (size_t i = 0; i < total; ++i) by_label[manifest.entries[i].label].push_back(i);

    // Largest-remainder quotas against the global target, each label keeping
    // at least one training sample.
    const auto target = static_cast<int64_t>(std::llround(train_ratio * static_cast<double>(total)));
    struct Quota {
        std::string label;
        int64_t take;
        int64_t have;
        double frac;
    };
    std::vector<Quota> quotas;
    int64_t assigned = 0;
    for (const auto& [label, idx] : by_label) {
        const double exact = train_ratio * static_cast<double>(idx.size());
        int64_t take = static_cast<int64_t>(std::floor(exact));
        take = std::clamp<int64_t>(take, 1, static_cast<int64_t>(idx.size()));
        quotas.push_back({label, take, static_cast<int64_t>(idx.size()), exact - std::floor(exact)});
        assigned += take;
    }
    if (assigned < target) {
        std::sort(quotas.begin(), quotas.end(), [](const Quota& a, const Quota& b) {
            if (a.frac != b.frac) return a.frac > b.frac;
            return a.label < b.label;
        });
        for (size_t pass = 0; assigned < target; ++pass) {
            bool moved = false;
            for (auto& q : quotas) {
                if (assigned >= target) break;
                if (q.take < q.have) {
                    q.take++;
                    assigned++;
                    moved = true;
                }
            }
            if (!moved) break; // everything is train already
        }
    } else if (assigned > target) {
        std::sort(quotas.begin(), quotas.end(), [](const Quota& a, const Quota& b) {
            if (a.frac != b.frac) return a.frac < b.frac;
            return a.label < b.label;
        });
        for (size_t pass = 0; assigned > target; ++pass) {
            bool moved = false;
            for (auto& q : quotas) {
                if (assigned <= target) break;
                if (q.take > 1) {
                    q.take--;
                    assigned--;
                    moved = true;
                }
            }
            if (!moved) break; // all labels at the one-sample floor
        }
    }

    Rng root(seed);
    for (const auto& q : quotas) {
        auto& idx = by_label[q.label];
        Rng label_rng = root.derive("split", fnv1a64(q.label));
        label_rng.shuffle(idx);
        for (size_t i = 0; i < idx.size(); ++i)
            manifest.entries[idx[i]].split =
                (static_cast<int64_t>(i) < q.take) ? Split::train : Split::test;
    }
}

void save_manifest_csv(const CorpusManifest& manifest, const std::string& path) {
    std::ostringstream out;
    out << "id,path,label,split\n";
    for (const auto& e : manifest.entries) {
        check_no_separator(e.id, "id");
        check_no_separator(e.path, "path");
        check_no_separator(e.label, "label");
        out << e.id << ',' << e.path << ',' << e.label << ',' << to_string(e.split) << '\n';
    }
    write_text_file(path, out.str());
}

CorpusManifest load_manifest_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open manifest: " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError("empty manifest: " + path);
    if (split_csv_line(line) != std::vector<std::string>{"id", "path", "label", "split"})
        throw DataError("manifest header must be id,path,label,split: " + path);

    CorpusManifest m;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 4)
            throw DataError(path + ":" + std::to_string(lineno) + ": expected 4 fields");
        ManifestEntry e;
        e.id = fields[0];
        e.path = fields[1];
        e.label = fields[2];
        if (fields[3] == "train") {
            e.split = Split::train;
        } else if (fields[3] == "test") {
            e.split = Split::test;
        } else {
            throw DataError(path + ":" + std::to_string(lineno) +
                            ": split must be train or test, got '" + fields[3] + "'");
        }
        m.entries.push_back(std::move(e));
    }
    if (m.entries.empty()) throw DataError("manifest lists no samples: " + path);
    check_unique_ids(m);
    return m;
}

} // namespace lexred
