#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "dsc/classifier.hpp"

namespace dsc {

namespace {

constexpr int kFormatVersion = 1;

using json = nlohmann::json;

[[noreturn]] void corrupt(const std::string& path, const std::string& why) {
    throw std::runtime_error("corrupt model file '" + path + "': " + why);
}

}  // namespace

std::string stopword_digest(const std::unordered_set<std::string>& stopwords) {
    std::vector<std::string> sorted(stopwords.begin(), stopwords.end());
    std::sort(sorted.begin(), sorted.end());

    // FNV-1a, 64-bit.
    std::uint64_t hash = 1469598103934665603ull;
    auto mix = [&hash](unsigned char byte) {
        hash ^= byte;
        hash *= 1099511628211ull;
    };
    for (const std::string& word : sorted) {
        for (const char c : word) mix(static_cast<unsigned char>(c));
        mix('\n');
    }

    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

void attach_stopwords(DscModel& model, std::unordered_set<std::string> stopwords) {
    const std::string digest = stopword_digest(stopwords);
    if (digest != model.stopwords_digest)
        throw std::runtime_error(
            "stop-word list does not match the one used at training (digest " + digest +
            ", model expects " + model.stopwords_digest + ")");
    model.preprocess.stopwords = std::move(stopwords);
}

void save_model(const DscModel& model, const std::string& path) {
    json j;
    j["format_version"] = kFormatVersion;
    j["alpha"] = model.alpha;
    if (std::isinf(model.p))
        j["p"] = "inf";
    else
        j["p"] = model.p;
    j["labels"] = model.labels;
    j["vocabulary"] = model.vocabulary.terms;
    json cs = json::object();
    for (std::size_t i = 0; i < model.labels.size(); ++i) cs[model.labels[i]] = model.cs[i];
    j["cs"] = std::move(cs);
    j["preprocess"] = {{"min_word_len_exclusive", model.preprocess.min_word_len_exclusive},
                       {"lowercase", model.preprocess.lowercase},
                       {"stopwords_digest", model.stopwords_digest}};

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write model file '" + path + "'");
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing model file '" + path + "'");
}

DscModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file '" + path + "'");

    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        corrupt(path, e.what());
    }

    try {
        if (!j.is_object() || !j.contains("format_version")) corrupt(path, "missing format_version");
        const auto version = j.at("format_version").get<std::int64_t>();
        if (version != kFormatVersion)
            throw std::runtime_error("model file '" + path + "': unsupported format version " +
                                     std::to_string(version));

        DscModel model;
        model.alpha = j.at("alpha").get<double>();
        if (std::isnan(model.alpha) || model.alpha < 0.0) corrupt(path, "alpha must be >= 0");

        const json& p = j.at("p");
        if (p.is_string()) {
            if (p.get<std::string>() != "inf") corrupt(path, "p must be a positive number or \"inf\"");
            model.p = std::numeric_limits<double>::infinity();
        } else {
            model.p = p.get<double>();
            if (std::isnan(model.p) || model.p <= 0.0) corrupt(path, "p must be > 0");
        }

        model.labels = j.at("labels").get<std::vector<std::string>>();
        if (model.labels.empty()) corrupt(path, "empty label set");

        model.vocabulary.terms = j.at("vocabulary").get<std::vector<std::string>>();
        for (std::uint32_t i = 0; i < model.vocabulary.terms.size(); ++i)
            if (!model.vocabulary.index.emplace(model.vocabulary.terms[i], i).second)
                corrupt(path, "duplicate vocabulary term '" + model.vocabulary.terms[i] + "'");
        if (model.vocabulary.terms.empty()) corrupt(path, "empty vocabulary");

        const json& cs = j.at("cs");
        model.cs.reserve(model.labels.size());
        for (const std::string& label : model.labels) {
            if (!cs.contains(label)) corrupt(path, "missing cs entry for label '" + label + "'");
            auto indices = cs.at(label).get<std::vector<std::uint32_t>>();
            std::sort(indices.begin(), indices.end());
            indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
            if (!indices.empty() && indices.back() >= model.vocabulary.size())
                corrupt(path, "cs index out of vocabulary range for label '" + label + "'");
            model.cs.push_back(std::move(indices));
        }

        const json& pre = j.at("preprocess");
        model.preprocess.min_word_len_exclusive = pre.at("min_word_len_exclusive").get<std::size_t>();
        model.preprocess.lowercase = pre.at("lowercase").get<bool>();
        model.stopwords_digest = pre.at("stopwords_digest").get<std::string>();
        // The stop words themselves are not stored; attach_stopwords()
        // reinstalls them from the user's file after a digest check.
        return model;
    } catch (const json::exception& e) {
        corrupt(path, e.what());
    }
}

}  // namespace dsc
