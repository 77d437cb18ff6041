#ifndef DSC_PREPROCESS_HPP
#define DSC_PREPROCESS_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "dsc/corpus.hpp"

namespace dsc {

struct PreprocessConfig {
    // Tokens of byte length <= this are dropped (0 keeps everything).
    std::size_t min_word_len_exclusive = 0;
    // Lowercase entries; matched against tokens after case folding.
    std::unordered_set<std::string> stopwords;
    bool lowercase = true;
};

// A tokenized document; length() is |d|, the token count after filtering.
struct Document {
    std::string id;
    std::vector<std::string> tokens;
    std::optional<std::string> label;

    std::size_t length() const { return tokens.size(); }
};

// Stop-word file: one lowercase word per line, UTF-8, '#' lines are comments.
std::unordered_set<std::string> load_stopwords(const std::string& path);

// Splits on maximal runs of non-alphanumeric bytes (bytes >= 0x80 count as
// word characters so multi-byte UTF-8 sequences stay intact), lowercases
// ASCII letters when configured, then applies the stop-word and length
// filters. Token order is preserved.
std::vector<std::string> tokenize(std::string_view text, const PreprocessConfig& config);

Document preprocess(const RawDocument& raw, const PreprocessConfig& config);

}  // namespace dsc

#endif  // DSC_PREPROCESS_HPP
