#include "dsc/vsm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace dsc {

std::optional<std::uint32_t> Vocabulary::find(const std::string& term) const {
    const auto it = index.find(term);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

Vocabulary build_vocabulary(const std::vector<Document>& docs) {
    Vocabulary vocab;
    for (const Document& doc : docs) {
        for (const std::string& token : doc.tokens) {
            const auto [it, inserted] =
                vocab.index.try_emplace(token, static_cast<std::uint32_t>(vocab.terms.size()));
            if (inserted) vocab.terms.push_back(token);
        }
    }
    if (vocab.terms.empty())
        throw std::runtime_error("empty vocabulary: every document is empty");
    return vocab;
}

std::size_t term_count(const Document& doc, std::string_view term) {
    std::size_t count = 0;
    for (const std::string& token : doc.tokens)
        if (token == term) ++count;
    return count;
}

FrequencyVector frequency_vector(const Document& doc, const Vocabulary& vocab) {
    FrequencyVector w;
    w.source_len = doc.length();
    if (w.source_len == 0) return w;

    std::map<std::uint32_t, std::size_t> counts;
    for (const std::string& token : doc.tokens)
        if (const auto idx = vocab.find(token)) ++counts[*idx];

    w.vector.entries.reserve(counts.size());
    const auto len = static_cast<double>(w.source_len);
    for (const auto& [idx, count] : counts)
        w.vector.entries.emplace_back(idx, static_cast<double>(count) / len);
    return w;
}

std::size_t document_frequency(const std::vector<Document>& docs, std::string_view term) {
    std::size_t df = 0;
    for (const Document& doc : docs)
        if (term_count(doc, term) > 0) ++df;
    return df;
}

SparseVector tfidf_vector(const Document& doc, const std::vector<Document>& docs,
                          const Vocabulary& vocab) {
    const auto n = static_cast<double>(docs.size());
    std::map<std::uint32_t, std::size_t> counts;
    for (const std::string& token : doc.tokens)
        if (const auto idx = vocab.find(token)) ++counts[*idx];

    SparseVector v;
    for (const auto& [idx, count] : counts) {
        const std::size_t df = document_frequency(docs, vocab.terms[idx]);
        if (df == 0)
            throw std::runtime_error("term '" + vocab.terms[idx] +
                                     "' appears in no corpus document; idf undefined");
        if (df == docs.size()) continue;  // log(n/n) = 0, omitted from the sparse map
        v.entries.emplace_back(idx, static_cast<double>(count) *
                                        std::log(n / static_cast<double>(df)));
    }
    return v;
}

double inner_product(const SparseVector& u, const SparseVector& v) {
    double sum = 0.0;
    auto iu = u.entries.begin();
    auto iv = v.entries.begin();
    while (iu != u.entries.end() && iv != v.entries.end()) {
        if (iu->first == iv->first) {
            sum += iu->second * iv->second;
            ++iu;
            ++iv;
        } else if (iu->first < iv->first) {
            ++iu;
        } else {
            ++iv;
        }
    }
    return sum;
}

}  // namespace dsc
