#include "dsc/eval.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace dsc {

namespace {

using json = nlohmann::json;

json p_to_json(double p) {
    if (std::isinf(p)) return json("inf");
    return json(p);
}

std::string p_to_string(double p) {
    if (std::isinf(p)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", p);
    return buf;
}

json per_class_json(const MetricsReport& report) {
    json per_class = json::object();
    for (const auto& [label, m] : report.per_class)
        per_class[label] = {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
    return per_class;
}

}  // namespace

std::uint64_t ConfusionMatrix::total() const {
    std::uint64_t sum = 0;
    for (const auto& row : counts)
        for (const std::uint64_t c : row) sum += c;
    return sum;
}

ConfusionMatrix confusion(const std::vector<std::string>& labels,
                          const std::vector<std::string>& predicted,
                          const std::vector<std::string>& truth) {
    if (predicted.size() != truth.size())
        throw std::runtime_error("confusion: " + std::to_string(predicted.size()) +
                                 " predictions vs " + std::to_string(truth.size()) +
                                 " true labels");
    if (predicted.empty()) throw std::runtime_error("confusion: no predictions");

    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t j = 0; j < labels.size(); ++j) pos.emplace(labels[j], j);
    auto find = [&pos](const std::string& label) {
        const auto it = pos.find(label);
        if (it == pos.end()) throw std::runtime_error("unknown label '" + label + "'");
        return it->second;
    };

    ConfusionMatrix cm;
    cm.labels = labels;
    cm.counts.assign(labels.size(), std::vector<std::uint64_t>(labels.size(), 0));
    for (std::size_t i = 0; i < truth.size(); ++i) ++cm.counts[find(truth[i])][find(predicted[i])];
    return cm;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
    const std::uint64_t total = cm.total();
    if (total == 0) throw std::runtime_error("metrics: empty confusion matrix");
    const std::size_t k = cm.labels.size();

    MetricsReport report;
    std::uint64_t trace = 0;
    for (std::size_t c = 0; c < k; ++c) trace += cm.counts[c][c];
    report.accuracy = static_cast<double>(trace) / static_cast<double>(total);

    for (std::size_t c = 0; c < k; ++c) {
        std::uint64_t rowsum = 0, colsum = 0;
        for (std::size_t i = 0; i < k; ++i) {
            rowsum += cm.counts[c][i];
            colsum += cm.counts[i][c];
        }
        const auto tp = static_cast<double>(cm.counts[c][c]);
        ClassMetrics m;
        m.precision = colsum == 0 ? 0.0 : tp / static_cast<double>(colsum);
        m.recall = rowsum == 0 ? 0.0 : tp / static_cast<double>(rowsum);
        m.f1 = m.precision + m.recall == 0.0
                   ? 0.0
                   : 2.0 * m.precision * m.recall / (m.precision + m.recall);
        report.per_class.emplace_back(cm.labels[c], m);
    }
    return report;
}

MetricsReport evaluate(const DscModel& model, const LabeledCorpus& corpus) {
    std::vector<std::string> predicted, truth;
    predicted.reserve(corpus.size());
    truth.reserve(corpus.size());

    const double seconds = timed([&] {
        for (const RawDocument& doc : corpus.documents) {
            predicted.push_back(classify_document(doc, model).label);
            truth.push_back(*doc.label);
        }
    });

    MetricsReport report = metrics(confusion(model.labels, predicted, truth));
    report.predict_seconds = seconds;
    return report;
}

MetricsReport cross_validate(const LabeledCorpus& corpus, int k_folds, double alpha,
                             double p, std::uint64_t seed, const PreprocessConfig& config) {
    const FoldPlan plan = make_folds(corpus, k_folds, seed);

    std::vector<std::string> predicted(corpus.size()), truth(corpus.size());
    double train_seconds = 0.0, predict_seconds = 0.0;
    for (int fold = 0; fold < k_folds; ++fold) {
        std::vector<RawDocument> train_docs;
        std::vector<std::size_t> held_out;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            if (plan.assignments[i] == fold)
                held_out.push_back(i);
            else
                train_docs.push_back(corpus.documents[i]);
        }

        auto [model, t_train] =
            timed([&] { return train(make_corpus(std::move(train_docs)), alpha, p, config); });
        train_seconds += t_train;

        predict_seconds += timed([&] {
            for (const std::size_t i : held_out) {
                predicted[i] = classify_document(corpus.documents[i], model).label;
                truth[i] = *corpus.documents[i].label;
            }
        });
    }

    MetricsReport report = metrics(confusion(corpus.labels, predicted, truth));
    report.train_seconds = train_seconds;
    report.predict_seconds = predict_seconds;
    return report;
}

GridResult grid_search(const LabeledCorpus& corpus, const std::vector<double>& alphas,
                       const std::vector<double>& ps, int k_folds, std::uint64_t seed,
                       const PreprocessConfig& config) {
    if (alphas.empty()) throw std::runtime_error("grid_search: empty alpha grid");
    if (ps.empty()) throw std::runtime_error("grid_search: empty p grid");

    GridResult grid;
    grid.cells.reserve(alphas.size() * ps.size());
    for (const double alpha : alphas)
        for (const double p : ps)
            grid.cells.push_back(
                GridCell{alpha, p, cross_validate(corpus, k_folds, alpha, p, seed, config)});

    grid.best = 0;
    for (std::size_t i = 1; i < grid.cells.size(); ++i) {
        const GridCell& cell = grid.cells[i];
        const GridCell& best = grid.cells[grid.best];
        const bool better = cell.report.accuracy > best.report.accuracy ||
                            (cell.report.accuracy == best.report.accuracy &&
                             (cell.alpha < best.alpha ||
                              (cell.alpha == best.alpha && cell.p < best.p)));
        if (better) grid.best = i;
    }
    return grid;
}

std::string report_json(const MetricsReport& report) {
    json j;
    j["accuracy"] = report.accuracy;
    j["per_class"] = per_class_json(report);
    j["timings"] = {{"train_seconds", report.train_seconds},
                    {"predict_seconds", report.predict_seconds}};
    return j.dump(2) + "\n";
}

std::string grid_json(const GridResult& grid) {
    json cells = json::array();
    double train_seconds = 0.0, predict_seconds = 0.0;
    for (const GridCell& cell : grid.cells) {
        cells.push_back({{"alpha", cell.alpha},
                         {"p", p_to_json(cell.p)},
                         {"accuracy", cell.report.accuracy},
                         {"per_class", per_class_json(cell.report)}});
        train_seconds += cell.report.train_seconds;
        predict_seconds += cell.report.predict_seconds;
    }

    const GridCell& best = grid.cells[grid.best];
    json j;
    j["grid"] = std::move(cells);
    j["best"] = {{"alpha", best.alpha},
                 {"p", p_to_json(best.p)},
                 {"accuracy", best.report.accuracy}};
    j["timings"] = {{"train_seconds", train_seconds}, {"predict_seconds", predict_seconds}};
    return j.dump(2) + "\n";
}

void print_report(std::ostream& os, const MetricsReport& report) {
    char line[160];
    std::snprintf(line, sizeof(line), "accuracy: %.4f\n", report.accuracy);
    os << line;
    std::snprintf(line, sizeof(line), "%-16s %9s %9s %9s\n", "class", "precision", "recall", "f1");
    os << line;
    for (const auto& [label, m] : report.per_class) {
        std::snprintf(line, sizeof(line), "%-16s %9.4f %9.4f %9.4f\n", label.c_str(),
                      m.precision, m.recall, m.f1);
        os << line;
    }
    std::snprintf(line, sizeof(line), "timings: train %.3f s, predict %.3f s\n",
                  report.train_seconds, report.predict_seconds);
    os << line;
}

void print_grid(std::ostream& os, const GridResult& grid) {
    char line[160];
    std::snprintf(line, sizeof(line), "%10s %8s %10s\n", "alpha", "p", "accuracy");
    os << line;
    for (const GridCell& cell : grid.cells) {
        std::snprintf(line, sizeof(line), "%10g %8s %10.4f\n", cell.alpha,
                      p_to_string(cell.p).c_str(), cell.report.accuracy);
        os << line;
    }
    const GridCell& best = grid.cells[grid.best];
    std::snprintf(line, sizeof(line), "best: alpha=%g p=%s accuracy=%.4f\n", best.alpha,
                  p_to_string(best.p).c_str(), best.report.accuracy);
    os << line;
    os << "per-class F1 at best cell:\n";
    for (const auto& [label, m] : best.report.per_class) {
        std::snprintf(line, sizeof(line), "  %-16s %.4f\n", label.c_str(), m.f1);
        os << line;
    }
}

}  // namespace dsc
