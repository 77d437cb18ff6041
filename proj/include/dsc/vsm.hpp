#ifndef DSC_VSM_HPP
#define DSC_VSM_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dsc/preprocess.hpp"

namespace dsc {

// Data dictionary of unique terms; `index` is the exact inverse of `terms`.
struct Vocabulary {
    std::vector<std::string> terms;
    std::unordered_map<std::string, std::uint32_t> index;

    std::uint32_t size() const { return static_cast<std::uint32_t>(terms.size()); }
    std::optional<std::uint32_t> find(const std::string& term) const;
};

// Sparse vector over vocabulary indices: entries sorted by index, values
// nonzero.
struct SparseVector {
    std::vector<std::pair<std::uint32_t, double>> entries;
};

// Relative word frequencies of one document, w(t) = c(t,d)/|d|.
// Out-of-vocabulary tokens count toward source_len but get no entry, so the
// weights sum to at most 1 (exactly 1 iff every token is in the vocabulary).
struct FrequencyVector {
    SparseVector vector;
    std::size_t source_len = 0;
};

// Unique terms across docs in order of first appearance. Throws when every
// document is empty.
Vocabulary build_vocabulary(const std::vector<Document>& docs);

// Multiplicity of `term` in the document (0 when absent).
std::size_t term_count(const Document& doc, std::string_view term);

FrequencyVector frequency_vector(const Document& doc, const Vocabulary& vocab);

// Number of documents containing `term` at least once.
std::size_t document_frequency(const std::vector<Document>& docs, std::string_view term);

// w_i = c(t_i,d) * ln(n / df(t_i)); terms present in every document get
// weight 0 and are omitted. A term of `doc` that is in the vocabulary but in
// none of `docs` makes the idf undefined and is an error.
SparseVector tfidf_vector(const Document& doc, const std::vector<Document>& docs,
                          const Vocabulary& vocab);

// Standard inner product over the shared support of two sparse vectors.
double inner_product(const SparseVector& u, const SparseVector& v);

}  // namespace dsc

#endif  // DSC_VSM_HPP
