// dsc: train / predict / evaluate / cv / grid for the domain-specific word
// classifier. See README.md for the file formats.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dsc/classifier.hpp"
#include "dsc/corpus.hpp"
#include "dsc/eval.hpp"
#include "dsc/preprocess.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 42;  // all randomness (folds) flows from --seed

struct CliConfig {
    std::string input;
    std::string format = "tsv";
    std::string model_path;
    double alpha = 0.0;
    std::string p = "1";
    std::string p_override;  // predict/evaluate default to the model's p
    std::vector<std::string> alpha_list;
    std::vector<std::string> p_list;
    std::size_t min_word_len = 0;
    std::string stopwords_path;
    int folds = 5;
    std::uint64_t seed = kDefaultSeed;
    std::string report_path;
};

// Usage-level validation failures exit with code 2; runtime failures with 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_p(const std::string& text) {
    if (text == "inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used == text.size() && value > 0.0 && !std::isnan(value)) return value;
    } catch (const std::exception&) {
    }
    throw UsageError("--p must be a positive real or 'inf', got '" + text + "'");
}

double parse_alpha(const std::string& text) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used == text.size() && value >= 0.0 && !std::isnan(value)) return value;
    } catch (const std::exception&) {
    }
    throw UsageError("--alpha must be >= 0, got '" + text + "'");
}

dsc::PreprocessConfig make_preprocess_config(const CliConfig& cli) {
    dsc::PreprocessConfig config;
    config.min_word_len_exclusive = cli.min_word_len;
    if (!cli.stopwords_path.empty()) config.stopwords = dsc::load_stopwords(cli.stopwords_path);
    return config;
}

dsc::LabeledCorpus load_labeled(const CliConfig& cli) {
    if (cli.format == "tsv") return dsc::load_labeled_tsv(cli.input);
    if (cli.format == "dir") return dsc::load_dir(cli.input);
    throw UsageError("--format must be 'tsv' or 'dir', got '" + cli.format + "'");
}

dsc::DscModel load_model_with_stopwords(const CliConfig& cli) {
    dsc::DscModel model = dsc::load_model(cli.model_path);
    std::unordered_set<std::string> stopwords;
    if (!cli.stopwords_path.empty()) stopwords = dsc::load_stopwords(cli.stopwords_path);
    dsc::attach_stopwords(model, std::move(stopwords));
    return model;
}

void write_report_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report file '" + path + "'");
    out << body;
    if (!out) throw std::runtime_error("failed writing report file '" + path + "'");
}

std::string format_score(double score) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", score);
    return buf;
}

int cmd_train(const CliConfig& cli) {
    if (std::isnan(cli.alpha) || cli.alpha < 0.0) throw UsageError("--alpha must be >= 0");
    const double p = parse_p(cli.p);
    const dsc::LabeledCorpus corpus = load_labeled(cli);
    const dsc::PreprocessConfig config = make_preprocess_config(cli);

    std::vector<std::string> warnings;
    const dsc::DscModel model = dsc::train(corpus, cli.alpha, p, config, &warnings);
    dsc::save_model(model, cli.model_path);

    std::cout << "trained on " << corpus.size() << " documents, k=" << model.labels.size()
              << " labels, m=" << model.vocabulary.size() << " terms\n";
    for (std::size_t j = 0; j < model.labels.size(); ++j)
        std::cout << "  |CS_" << model.labels[j] << "| = " << model.cs[j].size() << "\n";
    for (const std::string& warning : warnings) std::cout << "warning: " << warning << "\n";
    std::cout << "model written to " << cli.model_path << "\n";
    return 0;
}

int cmd_predict(const CliConfig& cli) {
    if (cli.format != "tsv")
        throw UsageError("predict supports --format tsv only (the directory layout is labeled)");
    const dsc::DscModel model = load_model_with_stopwords(cli);
    const double p = cli.p_override.empty() ? model.p : parse_p(cli.p_override);

    const std::vector<dsc::RawDocument> docs = dsc::load_unlabeled_tsv(cli.input);
    for (const dsc::RawDocument& doc : docs) {
        const dsc::Prediction pred = dsc::classify_document(doc, model, p);
        double best = pred.scores.empty() ? 0.0 : pred.scores[0];
        for (const double s : pred.scores) best = s > best ? s : best;
        std::cout << doc.id << '\t' << pred.label << '\t' << format_score(best);
        if (pred.tie) std::cout << "\ttie";
        std::cout << '\n';
    }
    return 0;
}

int cmd_evaluate(const CliConfig& cli) {
    dsc::DscModel model = load_model_with_stopwords(cli);
    if (!cli.p_override.empty()) model.p = parse_p(cli.p_override);
    const dsc::LabeledCorpus corpus = load_labeled(cli);

    const dsc::MetricsReport report = dsc::evaluate(model, corpus);
    dsc::print_report(std::cout, report);
    if (!cli.report_path.empty()) write_report_file(cli.report_path, dsc::report_json(report));
    return 0;
}

int cmd_cv(const CliConfig& cli) {
    if (std::isnan(cli.alpha) || cli.alpha < 0.0) throw UsageError("--alpha must be >= 0");
    if (cli.folds < 2) throw UsageError("--folds must be >= 2");
    const double p = parse_p(cli.p);
    const dsc::LabeledCorpus corpus = load_labeled(cli);
    const dsc::PreprocessConfig config = make_preprocess_config(cli);

    const dsc::MetricsReport report =
        dsc::cross_validate(corpus, cli.folds, cli.alpha, p, cli.seed, config);
    dsc::print_report(std::cout, report);
    if (!cli.report_path.empty()) write_report_file(cli.report_path, dsc::report_json(report));
    return 0;
}

int cmd_grid(const CliConfig& cli) {
    if (cli.folds < 2) throw UsageError("--folds must be >= 2");
    if (cli.alpha_list.empty()) throw UsageError("grid needs at least one --alpha value");
    if (cli.p_list.empty()) throw UsageError("grid needs at least one --p value");
    std::vector<double> alphas, ps;
    for (const std::string& a : cli.alpha_list) alphas.push_back(parse_alpha(a));
    for (const std::string& p : cli.p_list) ps.push_back(parse_p(p));
    const dsc::LabeledCorpus corpus = load_labeled(cli);
    const dsc::PreprocessConfig config = make_preprocess_config(cli);

    const dsc::GridResult grid =
        dsc::grid_search(corpus, alphas, ps, cli.folds, cli.seed, config);
    dsc::print_grid(std::cout, grid);
    if (!cli.report_path.empty()) write_report_file(cli.report_path, dsc::grid_json(grid));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Domain-specific word classifier"};
    app.require_subcommand(1);
    CliConfig cli;

    auto add_input = [&cli](CLI::App* cmd) {
        cmd->add_option("--input", cli.input, "input file or directory")->required();
        cmd->add_option("--format", cli.format, "input format: tsv | dir");
    };
    auto add_preprocess = [&cli](CLI::App* cmd) {
        cmd->add_option("--min-word-len", cli.min_word_len,
                        "drop tokens of length <= this (default 0)");
        cmd->add_option("--stopwords", cli.stopwords_path, "stop-word file, one word per line");
    };
    auto add_report = [&cli](CLI::App* cmd) {
        cmd->add_option("--report", cli.report_path, "write a JSON report here");
    };
    auto add_cv = [&cli](CLI::App* cmd) {
        cmd->add_option("--folds", cli.folds, "number of cross-validation folds (default 5)");
        cmd->add_option("--seed", cli.seed, "fold shuffle seed (default 42)");
    };

    CLI::App* train = app.add_subcommand("train", "train a model from a labeled corpus");
    add_input(train);
    add_preprocess(train);
    train->add_option("--model", cli.model_path, "output model file")->required();
    train->add_option("--alpha", cli.alpha, "domain-specificity threshold (>= 0)")->required();
    train->add_option("--p", cli.p, "l^p normalization: positive real or 'inf' (default 1)");

    CLI::App* predict = app.add_subcommand("predict", "label an unlabeled corpus");
    add_input(predict);
    predict->add_option("--model", cli.model_path, "model file")->required();
    predict->add_option("--stopwords", cli.stopwords_path,
                        "stop-word file used at training (digest-checked)");
    predict->add_option("--p", cli.p_override, "override the model's p for scoring");

    CLI::App* evaluate = app.add_subcommand("evaluate", "score a model on a labeled corpus");
    add_input(evaluate);
    evaluate->add_option("--model", cli.model_path, "model file")->required();
    evaluate->add_option("--stopwords", cli.stopwords_path,
                         "stop-word file used at training (digest-checked)");
    evaluate->add_option("--p", cli.p_override, "override the model's p for scoring");
    add_report(evaluate);

    CLI::App* cv = app.add_subcommand("cv", "k-fold cross-validation");
    add_input(cv);
    add_preprocess(cv);
    cv->add_option("--alpha", cli.alpha, "domain-specificity threshold (>= 0)")->required();
    cv->add_option("--p", cli.p, "l^p normalization: positive real or 'inf' (default 1)");
    add_cv(cv);
    add_report(cv);

    CLI::App* grid = app.add_subcommand("grid", "cross-validated alpha/p grid search");
    add_input(grid);
    add_preprocess(grid);
    grid->add_option("--alpha", cli.alpha_list, "alpha grid values (repeat or comma-separate)")
        ->required()
        ->delimiter(',');
    grid->add_option("--p", cli.p_list, "p grid values (repeat or comma-separate)")
        ->required()
        ->delimiter(',');
    add_cv(grid);
    add_report(grid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(train)) return cmd_train(cli);
        if (app.got_subcommand(predict)) return cmd_predict(cli);
        if (app.got_subcommand(evaluate)) return cmd_evaluate(cli);
        if (app.got_subcommand(cv)) return cmd_cv(cli);
        if (app.got_subcommand(grid)) return cmd_grid(cli);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
