#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "episent/tfidf.hpp"
#include "episent/types.hpp"

namespace episent {

struct NbModel {
    std::vector<SentimentLabel> classes;              // canonical label order
    std::vector<double> log_prior;                    // per class
    std::vector<std::vector<double>> log_likelihood;  // [class][term]
    double alpha = 1.0;
    std::size_t vocab_size = 0;
    // Set when training saw negative feature weights (possible with negative
    // IDF); such weights are clamped to zero because multinomial masses must
    // be non-negative.
    bool clamped_negative_weights = false;

    std::size_t class_index(SentimentLabel label) const {
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (classes[i] == label) return i;
        throw ValidationError("label not present in model classes");
    }
};

// Multinomial Naive Bayes over (possibly fractional) feature masses with
// Laplace smoothing:
//   log P(C)      = ln(count(C) / n_docs)
//   log P(t | C)  = ln((mass(t,C) + alpha) / (mass(.,C) + alpha * |vocab|))
inline NbModel nb_train(const DocTermMatrix& matrix, const std::vector<SentimentLabel>& labels,
                        const Vocabulary& vocab, double alpha,
                        const std::optional<std::vector<SentimentLabel>>& classes = std::nullopt) {
    if (matrix.rows.size() != labels.size())
        throw ValidationError("matrix and labels must have the same length");
    if (matrix.rows.empty()) throw ValidationError("cannot train on an empty matrix");
    if (!(alpha > 0.0)) throw ValidationError("alpha must be positive");

    NbModel model;
    model.alpha = alpha;
    model.vocab_size = vocab.size();

    if (classes) {
        model.classes = *classes;
    } else {
        for (SentimentLabel l : kAllLabels)
            if (std::find(labels.begin(), labels.end(), l) != labels.end())
                model.classes.push_back(l);
    }

    const std::size_t n_classes = model.classes.size();
    const std::size_t n_terms = vocab.size();
    std::vector<std::size_t> class_count(n_classes, 0);
    std::vector<std::vector<double>> mass(n_classes, std::vector<double>(n_terms, 0.0));

    for (std::size_t d = 0; d < matrix.rows.size(); ++d) {
        std::size_t c = n_classes;
        for (std::size_t i = 0; i < n_classes; ++i)
            if (model.classes[i] == labels[d]) { c = i; break; }
        if (c == n_classes) throw ValidationError("row label not in the requested class set");
        ++class_count[c];
        for (const auto& [idx, w] : matrix.rows[d]) {
            if (idx >= n_terms) throw ValidationError("matrix index outside vocabulary");
            if (w < 0.0) {
                model.clamped_negative_weights = true;
                continue;
            }
            mass[c][idx] += w;
        }
    }
    for (std::size_t c = 0; c < n_classes; ++c)
        if (class_count[c] == 0)
            throw ValidationError(std::string("class absent from training data: ") +
                                  std::string(to_string(model.classes[c])));

    const double n_docs = static_cast<double>(matrix.rows.size());
    model.log_prior.resize(n_classes);
    model.log_likelihood.assign(n_classes, std::vector<double>(n_terms, 0.0));
    for (std::size_t c = 0; c < n_classes; ++c) {
        model.log_prior[c] = std::log(static_cast<double>(class_count[c]) / n_docs);
        double total = 0.0;
        for (double m : mass[c]) total += m;
        const double denom = total + alpha * static_cast<double>(n_terms);
        for (std::size_t t = 0; t < n_terms; ++t)
            model.log_likelihood[c][t] = std::log((mass[c][t] + alpha) / denom);
    }
    return model;
}

// Arg-max of log P(C) + sum_i w_i * log P(t_i | C); ties go to the earlier
// class. Negative row weights are clamped to zero, mirroring training.
inline std::pair<SentimentLabel, std::vector<double>> nb_predict(
    const NbModel& model, const std::vector<std::pair<std::size_t, double>>& row) {
    std::vector<double> scores = model.log_prior;
    for (const auto& [idx, w] : row) {
        if (idx >= model.vocab_size) throw ValidationError("row index outside vocabulary");
        double weight = std::max(w, 0.0);
        for (std::size_t c = 0; c < scores.size(); ++c)
            scores[c] += weight * model.log_likelihood[c][idx];
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < scores.size(); ++c)
        if (scores[c] > scores[best]) best = c;
    return {model.classes[best], std::move(scores)};
}

inline nlohmann::json nb_to_json(const NbModel& model) {
    nlohmann::json classes = nlohmann::json::array();
    for (SentimentLabel l : model.classes) classes.push_back(to_string(l));
    return {{"classes", classes},
            {"log_prior", model.log_prior},
            {"log_likelihood", model.log_likelihood},
            {"alpha", model.alpha},
            {"vocab_size", model.vocab_size}};
}

inline NbModel nb_from_json(const nlohmann::json& j) {
    NbModel model;
    for (const auto& name : j.at("classes")) {
        auto label = parse_label(name.get<std::string>());
        if (!label) throw ValidationError("unknown class label in model file");
        model.classes.push_back(*label);
    }
    model.log_prior = j.at("log_prior").get<std::vector<double>>();
    model.log_likelihood = j.at("log_likelihood").get<std::vector<std::vector<double>>>();
    model.alpha = j.at("alpha").get<double>();
    model.vocab_size = j.at("vocab_size").get<std::size_t>();
    if (model.log_prior.size() != model.classes.size() ||
        model.log_likelihood.size() != model.classes.size())
        throw ValidationError("model parameter shapes do not match the class list");
    for (const auto& row : model.log_likelihood)
        if (row.size() != model.vocab_size)
            throw ValidationError("model parameter shapes do not match the vocabulary");
    return model;
}

}  // namespace episent
