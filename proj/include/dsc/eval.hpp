#ifndef DSC_EVAL_HPP
#define DSC_EVAL_HPP

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dsc/classifier.hpp"
#include "dsc/corpus.hpp"

namespace dsc {

// rows = true label, columns = predicted label.
struct ConfusionMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<std::uint64_t>> counts;

    std::uint64_t total() const;
};

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct MetricsReport {
    double accuracy = 0.0;
    std::vector<std::pair<std::string, ClassMetrics>> per_class;  // label order
    double train_seconds = 0.0;
    double predict_seconds = 0.0;
};

ConfusionMatrix confusion(const std::vector<std::string>& labels,
                          const std::vector<std::string>& predicted,
                          const std::vector<std::string>& truth);

// accuracy = trace/total; per class, one-vs-rest precision/recall/F1 with
// the 0/0 -> 0 convention. Timings are left for the caller to fill.
MetricsReport metrics(const ConfusionMatrix& cm);

// Wall-clock duration of a call, in seconds; value-returning callables give
// back (result, seconds).
template <typename Fn>
auto timed(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<std::invoke_result_t<Fn&&>>) {
        std::forward<Fn>(fn)();
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        return dt.count();
    } else {
        auto result = std::forward<Fn>(fn)();
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        return std::make_pair(std::move(result), dt.count());
    }
}

// Classify every document of a labeled corpus with a trained model and score
// the predictions against the true labels. train_seconds stays 0.
MetricsReport evaluate(const DscModel& model, const LabeledCorpus& corpus);

// k-fold cross-validation: train on each fold's complement, predict the
// fold, pool all predictions into one confusion matrix. Deterministic for a
// fixed (corpus, k_folds, seed). Timings accumulate across folds.
MetricsReport cross_validate(const LabeledCorpus& corpus, int k_folds, double alpha,
                             double p, std::uint64_t seed, const PreprocessConfig& config);

struct GridCell {
    double alpha = 0.0;
    double p = 1.0;
    MetricsReport report;
};

struct GridResult {
    std::vector<GridCell> cells;  // alphas outer, ps inner, in input order
    std::size_t best = 0;         // highest accuracy; ties to smaller alpha, then smaller p
};

GridResult grid_search(const LabeledCorpus& corpus, const std::vector<double>& alphas,
                       const std::vector<double>& ps, int k_folds, std::uint64_t seed,
                       const PreprocessConfig& config);

// Machine-readable reports (accuracy, per-class metrics, timings, grid
// table), serialized deterministically apart from the timing values.
std::string report_json(const MetricsReport& report);
std::string grid_json(const GridResult& grid);

void print_report(std::ostream& os, const MetricsReport& report);
void print_grid(std::ostream& os, const GridResult& grid);

}  // namespace dsc

#endif  // DSC_EVAL_HPP
