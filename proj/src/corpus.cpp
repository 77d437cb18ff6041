#include "dsc/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace dsc {

namespace {

void strip_trailing_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::runtime_error("failed reading file '" + path.string() + "'");
    return std::move(buf).str();
}

}  // namespace

std::size_t LabeledCorpus::label_index(const std::string& label) const {
    for (std::size_t j = 0; j < labels.size(); ++j)
        if (labels[j] == label) return j;
    throw std::runtime_error("unknown label '" + label + "'");
}

LabeledCorpus make_corpus(std::vector<RawDocument> documents) {
    if (documents.empty()) throw std::runtime_error("empty corpus: no documents");

    LabeledCorpus corpus;
    std::unordered_map<std::string, std::size_t> label_pos;
    std::unordered_set<std::string> seen_ids;
    for (std::size_t i = 0; i < documents.size(); ++i) {
        const RawDocument& doc = documents[i];
        if (!doc.label)
            throw std::runtime_error("document '" + doc.id + "' has no label");
        if (!seen_ids.insert(doc.id).second)
            throw std::runtime_error("duplicate document id '" + doc.id + "'");
        auto [it, inserted] = label_pos.try_emplace(*doc.label, corpus.labels.size());
        if (inserted) {
            corpus.labels.push_back(*doc.label);
            corpus.per_label_index.emplace_back();
        }
        corpus.per_label_index[it->second].push_back(i);
    }
    corpus.documents = std::move(documents);
    return corpus;
}

LabeledCorpus load_labeled_tsv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file '" + path + "'");

    std::vector<RawDocument> docs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_trailing_cr(line);
        if (line.empty()) continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": missing TAB separator between label and text");
        if (tab == 0)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty label");
        docs.push_back(RawDocument{std::to_string(lineno), line.substr(tab + 1),
                                   line.substr(0, tab)});
    }
    if (docs.empty()) throw std::runtime_error("no documents in '" + path + "'");
    return make_corpus(std::move(docs));
}

std::vector<RawDocument> load_unlabeled_tsv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file '" + path + "'");

    std::vector<RawDocument> docs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_trailing_cr(line);
        if (line.empty()) continue;
        docs.push_back(RawDocument{std::to_string(lineno), line, std::nullopt});
    }
    if (docs.empty()) throw std::runtime_error("no documents in '" + path + "'");
    return docs;
}

void write_tsv(const LabeledCorpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file '" + path + "'");
    for (const RawDocument& doc : corpus.documents)
        out << *doc.label << '\t' << doc.text << '\n';
    if (!out) throw std::runtime_error("failed writing file '" + path + "'");
}

LabeledCorpus load_dir(const std::string& path) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(path))
        throw std::runtime_error("'" + path + "' is not a directory");

    std::vector<std::string> label_dirs;
    for (const auto& entry : fs::directory_iterator(path))
        if (entry.is_directory()) label_dirs.push_back(entry.path().filename().string());
    std::sort(label_dirs.begin(), label_dirs.end());
    if (label_dirs.empty())
        throw std::runtime_error("no label subdirectories in '" + path + "'");

    std::vector<RawDocument> docs;
    for (const std::string& label : label_dirs) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(fs::path(path) / label))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        if (files.empty())
            throw std::runtime_error("label '" + label + "' has no documents in '" + path + "'");
        for (const fs::path& file : files)
            docs.push_back(RawDocument{label + "/" + file.filename().string(),
                                       read_file(file), label});
    }
    return make_corpus(std::move(docs));
}

FoldPlan make_folds(const LabeledCorpus& corpus, int k_folds, std::uint64_t seed) {
    if (k_folds < 2) throw std::runtime_error("k_folds must be >= 2");
    const auto k = static_cast<std::size_t>(k_folds);
    for (std::size_t j = 0; j < corpus.label_count(); ++j)
        if (corpus.per_label_index[j].size() < k)
            throw std::runtime_error("label '" + corpus.labels[j] + "' has " +
                                     std::to_string(corpus.per_label_index[j].size()) +
                                     " documents, fewer than " + std::to_string(k_folds) +
                                     " folds");

    FoldPlan plan;
    plan.k_folds = k_folds;
    plan.seed = seed;
    plan.assignments.assign(corpus.size(), -1);

    // Hand-rolled Fisher-Yates: std::shuffle's draw sequence is not pinned
    // down by the standard, and fold assignments must replay across builds.
    std::mt19937_64 rng(seed);
    for (std::size_t j = 0; j < corpus.label_count(); ++j) {
        std::vector<std::size_t> idx = corpus.per_label_index[j];
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[rng() % i]);
        // Rotate the starting fold per label so the leftover documents of
        // unevenly divisible labels do not all land in fold 0.
        const std::size_t start = j % k;
        for (std::size_t i = 0; i < idx.size(); ++i)
            plan.assignments[idx[i]] = static_cast<int>((start + i) % k);
    }
    return plan;
}

}  // namespace dsc
