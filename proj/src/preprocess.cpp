#include "dsc/preprocess.hpp"

#include <fstream>
#include <stdexcept>

namespace dsc {

namespace {

inline bool is_word_byte(unsigned char c) {
    // ASCII alphanumerics; bytes >= 0x80 are parts of multi-byte UTF-8
    // sequences and must not split a token.
    return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           c >= 0x80;
}

inline char fold_ascii(unsigned char c, bool lowercase) {
    if (lowercase && c >= 'A' && c <= 'Z') return static_cast<char>(c - 'A' + 'a');
    return static_cast<char>(c);
}

void ascii_lower(std::string& s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
}

void trim(std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    s = s.substr(b, e - b);
}

}  // namespace

std::unordered_set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open stop-word file '" + path + "'");

    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        trim(line);
        if (line.empty() || line[0] == '#') continue;
        ascii_lower(line);
        words.insert(line);
    }
    return words;
}

std::vector<std::string> tokenize(std::string_view text, const PreprocessConfig& config) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.size() > config.min_word_len_exclusive && !config.stopwords.contains(current))
            tokens.push_back(current);
        current.clear();
    };
    for (const char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (is_word_byte(c))
            current.push_back(fold_ascii(c, config.lowercase));
        else if (!current.empty())
            flush();
    }
    if (!current.empty()) flush();
    return tokens;
}

Document preprocess(const RawDocument& raw, const PreprocessConfig& config) {
    return Document{raw.id, tokenize(raw.text, config), raw.label};
}

}  // namespace dsc
