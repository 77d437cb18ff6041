#include "dsc/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace dsc {

namespace {

void check_p(double p) {
    if (std::isnan(p) || p <= 0.0)
        throw std::runtime_error("p must be a positive real or infinity");
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

}  // namespace

ClassProfiles class_profiles(const std::vector<Document>& docs,
                             const std::vector<std::string>& labels,
                             const Vocabulary& vocab) {
    ClassProfiles profiles;
    profiles.labels = labels;
    profiles.f.resize(labels.size());

    std::unordered_map<std::string, std::size_t> label_pos;
    for (std::size_t j = 0; j < labels.size(); ++j) label_pos.emplace(labels[j], j);

    std::vector<std::size_t> doc_count(labels.size(), 0);
    std::vector<bool> has_nonempty(labels.size(), false);
    for (const Document& doc : docs) {
        if (!doc.label) throw std::runtime_error("document '" + doc.id + "' has no label");
        const auto it = label_pos.find(*doc.label);
        if (it == label_pos.end())
            throw std::runtime_error("unknown label '" + *doc.label + "'");
        const std::size_t j = it->second;
        ++doc_count[j];
        if (doc.length() == 0) continue;  // counts in |D_j| but adds nothing
        has_nonempty[j] = true;

        std::unordered_map<std::uint32_t, std::size_t> counts;
        for (const std::string& token : doc.tokens)
            if (const auto idx = vocab.find(token)) ++counts[*idx];
        const auto len = static_cast<double>(doc.length());
        for (const auto& [idx, count] : counts)
            profiles.f[j][idx] += static_cast<double>(count) / len;
    }

    for (std::size_t j = 0; j < labels.size(); ++j) {
        if (doc_count[j] == 0)
            throw std::runtime_error("label '" + labels[j] + "' has no documents");
        if (!has_nonempty[j])
            throw std::runtime_error("label '" + labels[j] +
                                     "': every document is empty after preprocessing");
        const auto n = static_cast<double>(doc_count[j]);
        for (auto& [idx, sum] : profiles.f[j]) sum /= n;
    }
    return profiles;
}

std::vector<std::vector<std::uint32_t>> extract_domain_specific(
    const ClassProfiles& profiles, double alpha, std::vector<std::string>* warnings) {
    if (std::isnan(alpha) || alpha < 0.0) throw std::runtime_error("alpha must be >= 0");

    const std::size_t k = profiles.labels.size();
    std::vector<std::uint32_t> terms;
    for (const auto& f_j : profiles.f)
        for (const auto& [idx, value] : f_j) terms.push_back(idx);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

    std::vector<std::vector<std::uint32_t>> cs(k);
    std::vector<double> values(k);
    for (const std::uint32_t t : terms) {
        for (std::size_t j = 0; j < k; ++j) {
            const auto it = profiles.f[j].find(t);
            values[j] = it == profiles.f[j].end() ? 0.0 : it->second;
        }
        for (std::size_t j = 0; j < k; ++j) {
            double others = 0.0;
            for (std::size_t l = 0; l < k; ++l)
                if (l != j) others += values[l];
            if (values[j] > alpha * others) cs[j].push_back(t);
        }
    }

    if (warnings) {
        for (std::size_t j = 0; j < k; ++j)
            if (cs[j].empty())
                warnings->push_back("label '" + profiles.labels[j] +
                                    "': no domain-specific words at alpha=" +
                                    format_number(alpha) + "; consider lowering alpha");
    }
    return cs;
}

double lp_normalizer(std::size_t set_size, double p) {
    check_p(p);
    if (set_size == 0) throw std::runtime_error("lp_normalizer: empty set");
    const auto n = static_cast<double>(set_size);
    if (std::isinf(p)) return 1.0;
    if (p == 1.0) return n;
    if (p == 2.0) return std::sqrt(n);
    if (p == 0.5) return n * n;
    return std::pow(n, 1.0 / p);
}

SparseVector ClassMeasure::as_vector() const {
    SparseVector v;
    if (weight_per_term == 0.0) return v;
    v.entries.reserve(support.size());
    for (const std::uint32_t t : support) v.entries.emplace_back(t, weight_per_term);
    return v;
}

ClassMeasure class_measure(std::string label, std::vector<std::uint32_t> support, double p) {
    check_p(p);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    ClassMeasure measure;
    measure.label = std::move(label);
    measure.weight_per_term = support.empty() ? 0.0 : 1.0 / lp_normalizer(support.size(), p);
    measure.support = std::move(support);
    return measure;
}

double score(const FrequencyVector& w, const std::vector<std::uint32_t>& cs, double p) {
    check_p(p);
    if (cs.empty()) return 0.0;

    double mass = 0.0;  // w[CS], summed in ascending index order
    auto iw = w.vector.entries.begin();
    auto ic = cs.begin();
    while (iw != w.vector.entries.end() && ic != cs.end()) {
        if (iw->first == *ic) {
            mass += iw->second;
            ++iw;
            ++ic;
        } else if (iw->first < *ic) {
            ++iw;
        } else {
            ++ic;
        }
    }
    return mass / lp_normalizer(cs.size(), p);
}

Prediction classify(const FrequencyVector& w, const DscModel& model, double p_override) {
    check_p(p_override);
    if (model.labels.empty()) throw std::runtime_error("model has no labels");
    if (!w.vector.entries.empty() && w.vector.entries.back().first >= model.vocabulary.size())
        throw std::runtime_error("frequency vector does not match the model vocabulary");

    Prediction pred;
    pred.scores.reserve(model.labels.size());
    for (const auto& cs_j : model.cs) pred.scores.push_back(score(w, cs_j, p_override));

    // best lands on the earliest maximizer because only strictly greater
    // scores displace it.
    std::size_t best = 0;
    for (std::size_t j = 1; j < pred.scores.size(); ++j)
        if (pred.scores[j] > pred.scores[best]) best = j;
    std::size_t maximizers = 0;
    for (const double s : pred.scores)
        if (s == pred.scores[best]) ++maximizers;
    pred.label = model.labels[best];
    pred.tie = maximizers > 1;
    return pred;
}

Prediction classify(const FrequencyVector& w, const DscModel& model) {
    return classify(w, model, model.p);
}

Prediction classify_document(const RawDocument& raw, const DscModel& model, double p_override) {
    const Document doc = preprocess(raw, model.preprocess);
    return classify(frequency_vector(doc, model.vocabulary), model, p_override);
}

Prediction classify_document(const RawDocument& raw, const DscModel& model) {
    return classify_document(raw, model, model.p);
}

DscModel train(const LabeledCorpus& corpus, double alpha, double p,
               const PreprocessConfig& config, std::vector<std::string>* warnings) {
    if (corpus.documents.empty()) throw std::runtime_error("empty corpus: no documents");
    if (std::isnan(alpha) || alpha < 0.0) throw std::runtime_error("alpha must be >= 0");
    check_p(p);

    std::vector<Document> docs;
    docs.reserve(corpus.size());
    for (const RawDocument& raw : corpus.documents) docs.push_back(preprocess(raw, config));

    DscModel model;
    model.alpha = alpha;
    model.p = p;
    model.vocabulary = build_vocabulary(docs);
    model.labels = corpus.labels;
    model.cs = extract_domain_specific(class_profiles(docs, corpus.labels, model.vocabulary),
                                       alpha, warnings);
    model.preprocess = config;
    model.stopwords_digest = stopword_digest(config.stopwords);
    return model;
}

}  // namespace dsc
