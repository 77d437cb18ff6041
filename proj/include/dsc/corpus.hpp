#ifndef DSC_CORPUS_HPP
#define DSC_CORPUS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dsc {

// One input document as read from disk, before tokenization.
struct RawDocument {
    std::string id;
    std::string text;
    std::optional<std::string> label;
};

// A labeled collection partitioned by label. Labels are distinct and kept in
// a fixed order; per_label_index[j] holds the positions of the documents
// carrying labels[j], so the blocks are disjoint and cover all documents.
struct LabeledCorpus {
    std::vector<RawDocument> documents;
    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> per_label_index;

    std::size_t size() const { return documents.size(); }
    std::size_t label_count() const { return labels.size(); }
    // Position of a label in `labels`; throws on unknown labels.
    std::size_t label_index(const std::string& label) const;
};

// Stratified cross-validation assignment: assignments[i] is the fold of
// documents[i].
struct FoldPlan {
    int k_folds = 0;
    std::uint64_t seed = 0;
    std::vector<int> assignments;
};

// Builds the label set (order of first appearance) and the per-label
// partition. Every document must carry a label and a unique id.
LabeledCorpus make_corpus(std::vector<RawDocument> documents);

// `label<TAB>text` per line; ids are 1-based line numbers. Empty lines are
// skipped. Labels are kept in order of first appearance.
LabeledCorpus load_labeled_tsv(const std::string& path);

// One document text per line, same id scheme, no labels.
std::vector<RawDocument> load_unlabeled_tsv(const std::string& path);

void write_tsv(const LabeledCorpus& corpus, const std::string& path);

// One subdirectory per label, every regular file inside is one document.
// Labels are the subdirectory names sorted lexicographically; ids are
// `label/filename`.
LabeledCorpus load_dir(const std::string& path);

// Deterministic stratified folds: each label's documents are shuffled with
// the seeded generator and dealt round-robin, so within every label the fold
// sizes differ by at most one. Every label needs at least k_folds documents.
FoldPlan make_folds(const LabeledCorpus& corpus, int k_folds, std::uint64_t seed);

}  // namespace dsc

#endif  // DSC_CORPUS_HPP
