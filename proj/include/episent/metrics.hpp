#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "episent/types.hpp"

namespace episent {

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct EvalReport {
    std::vector<SentimentLabel> classes;
    std::vector<std::vector<std::size_t>> confusion;  // rows gold, cols predicted
    double accuracy = 0.0;
    std::vector<ClassMetrics> per_class;
    ClassMetrics macro;
};

inline std::vector<std::vector<std::size_t>> confusion_matrix(
    const std::vector<SentimentLabel>& gold, const std::vector<SentimentLabel>& pred,
    const std::vector<SentimentLabel>& classes) {
    if (gold.size() != pred.size())
        throw ValidationError("gold and predicted label lists must have the same length");
    if (gold.empty()) throw ValidationError("cannot evaluate an empty label list");

    auto index_of = [&](SentimentLabel l) -> std::size_t {
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (classes[i] == l) return i;
        throw ValidationError("label outside the declared class set");
    };

    std::vector<std::vector<std::size_t>> confusion(
        classes.size(), std::vector<std::size_t>(classes.size(), 0));
    for (std::size_t i = 0; i < gold.size(); ++i)
        ++confusion[index_of(gold[i])][index_of(pred[i])];
    return confusion;
}

// Derives every metric from the confusion matrix alone. Ratios with a zero
// denominator are defined as 0; macro averages run over the classes that
// appear in gold or predictions.
inline EvalReport report_from_confusion(const std::vector<std::vector<std::size_t>>& confusion,
                                        const std::vector<SentimentLabel>& classes) {
    EvalReport report;
    report.classes = classes;
    report.confusion = confusion;

    const std::size_t k = classes.size();
    std::size_t total = 0, correct = 0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            total += confusion[i][j];
            if (i == j) correct += confusion[i][j];
        }
    report.accuracy = total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);

    auto ratio = [](std::size_t num, std::size_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };

    report.per_class.resize(k);
    std::size_t present = 0;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t tp = confusion[c][c];
        std::size_t gold_count = 0, pred_count = 0;
        for (std::size_t j = 0; j < k; ++j) {
            gold_count += confusion[c][j];
            pred_count += confusion[j][c];
        }
        ClassMetrics& m = report.per_class[c];
        m.precision = ratio(tp, pred_count);
        m.recall = ratio(tp, gold_count);
        m.f1 = (m.precision + m.recall) == 0.0
                   ? 0.0
                   : 2.0 * m.precision * m.recall / (m.precision + m.recall);
        if (gold_count > 0 || pred_count > 0) {
            ++present;
            report.macro.precision += m.precision;
            report.macro.recall += m.recall;
            report.macro.f1 += m.f1;
        }
    }
    if (present > 0) {
        report.macro.precision /= static_cast<double>(present);
        report.macro.recall /= static_cast<double>(present);
        report.macro.f1 /= static_cast<double>(present);
    }
    return report;
}

inline EvalReport evaluate(const std::vector<SentimentLabel>& gold,
                           const std::vector<SentimentLabel>& pred,
                           const std::vector<SentimentLabel>& classes) {
    return report_from_confusion(confusion_matrix(gold, pred, classes), classes);
}

inline nlohmann::json report_to_json(const EvalReport& report) {
    nlohmann::json classes = nlohmann::json::array();
    for (SentimentLabel l : report.classes) classes.push_back(to_string(l));
    nlohmann::json per_class = nlohmann::json::object();
    for (std::size_t c = 0; c < report.classes.size(); ++c)
        per_class[std::string(to_string(report.classes[c]))] = {
            {"precision", report.per_class[c].precision},
            {"recall", report.per_class[c].recall},
            {"f1", report.per_class[c].f1}};
    return {{"classes", classes},
            {"confusion", report.confusion},
            {"accuracy", report.accuracy},
            {"per_class", per_class},
            {"macro",
             {{"precision", report.macro.precision},
              {"recall", report.macro.recall},
              {"f1", report.macro.f1}}}};
}

}  // namespace episent
