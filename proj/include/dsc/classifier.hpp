#ifndef DSC_CLASSIFIER_HPP
#define DSC_CLASSIFIER_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dsc/corpus.hpp"
#include "dsc/preprocess.hpp"
#include "dsc/vsm.hpp"

namespace dsc {

// Per-label mean relative term frequencies over the training documents:
// f_j(t) = (1/|D_j|) * sum over documents d of label j of c(t,d)/|d|.
// Only strictly positive values are stored; `f` is parallel to `labels`.
struct ClassProfiles {
    std::vector<std::string> labels;
    std::vector<std::unordered_map<std::uint32_t, double>> f;
};

// Every label must have at least one nonempty document; empty documents
// still count in the |D_j| denominator.
ClassProfiles class_profiles(const std::vector<Document>& docs,
                             const std::vector<std::string>& labels,
                             const Vocabulary& vocab);

// CS_j = { t : f_j(t) > alpha * sum_{j' != j} f_{j'}(t) }, strict inequality.
// Returns one ascending index set per label. An empty CS_j is legal; a
// warning naming the label is appended for each one.
std::vector<std::vector<std::uint32_t>> extract_domain_specific(
    const ClassProfiles& profiles, double alpha,
    std::vector<std::string>* warnings = nullptr);

// |set|^(1/p) for finite p, 1 for p = infinity; set_size must be >= 1.
double lp_normalizer(std::size_t set_size, double p);

// Uniform measure on a set of domain-specific words, normalized to unit
// l^p norm (weight 1 per word when p is infinite, the zero measure when the
// support is empty).
struct ClassMeasure {
    std::string label;
    std::vector<std::uint32_t> support;  // ascending
    double weight_per_term = 0.0;

    SparseVector as_vector() const;
};

ClassMeasure class_measure(std::string label, std::vector<std::uint32_t> support, double p);

// w[CS] / |CS|^(1/p): the total relative frequency of the set's words in the
// document, normalized. 0 when the set is empty.
double score(const FrequencyVector& w, const std::vector<std::uint32_t>& cs, double p);

struct Prediction {
    std::string label;
    std::vector<double> scores;  // per label, in model label order
    bool tie = false;            // argmax was not unique
};

struct DscModel {
    double alpha = 0.0;
    // p in (0, inf]; std::numeric_limits<double>::infinity() selects the
    // non-normalized uniform measures.
    double p = 1.0;
    Vocabulary vocabulary;
    std::vector<std::string> labels;
    std::vector<std::vector<std::uint32_t>> cs;  // parallel to labels, ascending
    PreprocessConfig preprocess;
    std::string stopwords_digest;
};

// Argmax of score(w, CS_j, p) over labels; ties go to the earliest label in
// the model's label order and set the tie flag. The p override reuses the
// trained CS sets (they do not depend on p).
Prediction classify(const FrequencyVector& w, const DscModel& model);
Prediction classify(const FrequencyVector& w, const DscModel& model, double p_override);

// Preprocess + vectorize with the model's captured config, then classify.
Prediction classify_document(const RawDocument& raw, const DscModel& model);
Prediction classify_document(const RawDocument& raw, const DscModel& model, double p_override);

// Full training pipeline: preprocess, build vocabulary, class profiles,
// domain-specific word extraction. Deterministic for fixed inputs.
DscModel train(const LabeledCorpus& corpus, double alpha, double p,
               const PreprocessConfig& config,
               std::vector<std::string>* warnings = nullptr);

// Versioned JSON model file. Equal models serialize byte-identically.
void save_model(const DscModel& model, const std::string& path);
DscModel load_model(const std::string& path);

// FNV-1a over the sorted stop-word list. Stored in the model file so a
// prediction run can verify it was handed the list training used.
std::string stopword_digest(const std::unordered_set<std::string>& stopwords);

// Installs stop words on a loaded model after checking their digest.
void attach_stopwords(DscModel& model, std::unordered_set<std::string> stopwords);

}  // namespace dsc

#endif  // DSC_CLASSIFIER_HPP
