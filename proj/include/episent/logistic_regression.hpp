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

struct LrConfig {
    double learning_rate = 0.1;
    std::size_t epochs = 1000;
    double l2_penalty = 1e-4;
    std::uint64_t seed = 42;
};

struct LrModel {
    std::vector<SentimentLabel> classes;
    std::vector<std::vector<double>> weights;  // [class][term]
    std::vector<double> bias;                  // per class
    LrConfig config;
    std::size_t vocab_size = 0;
    std::vector<double> loss_history;  // per-epoch training loss, not serialized

    std::size_t class_index(SentimentLabel label) const {
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (classes[i] == label) return i;
        throw ValidationError("label not present in model classes");
    }
};

namespace lr_detail {

using SparseRow = std::vector<std::pair<std::size_t, double>>;

// Max-subtracted softmax of class logits for one sparse row.
inline std::vector<double> softmax_probs(const std::vector<std::vector<double>>& weights,
                                         const std::vector<double>& bias, const SparseRow& row) {
    const std::size_t n_classes = bias.size();
    std::vector<double> z = bias;
    for (const auto& [idx, w] : row)
        for (std::size_t c = 0; c < n_classes; ++c) z[c] += weights[c][idx] * w;
    double zmax = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double& v : z) {
        v = std::exp(v - zmax);
        sum += v;
    }
    for (double& v : z) v /= sum;
    return z;
}

}  // namespace lr_detail

// Mean softmax cross-entropy over the matrix plus (l2/2) * ||W||^2 (bias
// excluded from the penalty).
inline double lr_loss(const DocTermMatrix& matrix, const std::vector<std::size_t>& label_idx,
                      const std::vector<std::vector<double>>& weights,
                      const std::vector<double>& bias, double l2_penalty) {
    double loss = 0.0;
    for (std::size_t d = 0; d < matrix.rows.size(); ++d) {
        std::vector<double> p = lr_detail::softmax_probs(weights, bias, matrix.rows[d]);
        loss -= std::log(p[label_idx[d]]);
    }
    loss /= static_cast<double>(matrix.rows.size());
    double penalty = 0.0;
    for (const auto& row : weights)
        for (double w : row) penalty += w * w;
    return loss + 0.5 * l2_penalty * penalty;
}

// Full-batch gradient of lr_loss with respect to weights and bias.
inline std::pair<std::vector<std::vector<double>>, std::vector<double>> lr_gradient(
    const DocTermMatrix& matrix, const std::vector<std::size_t>& label_idx,
    const std::vector<std::vector<double>>& weights, const std::vector<double>& bias,
    double l2_penalty) {
    const std::size_t n_classes = bias.size();
    const std::size_t n_terms = weights.empty() ? 0 : weights[0].size();
    std::vector<std::vector<double>> grad_w(n_classes, std::vector<double>(n_terms, 0.0));
    std::vector<double> grad_b(n_classes, 0.0);
    const double inv_n = 1.0 / static_cast<double>(matrix.rows.size());
    for (std::size_t d = 0; d < matrix.rows.size(); ++d) {
        std::vector<double> p = lr_detail::softmax_probs(weights, bias, matrix.rows[d]);
        p[label_idx[d]] -= 1.0;
        for (std::size_t c = 0; c < n_classes; ++c) {
            grad_b[c] += p[c] * inv_n;
            for (const auto& [idx, w] : matrix.rows[d]) grad_w[c][idx] += p[c] * w * inv_n;
        }
    }
    for (std::size_t c = 0; c < n_classes; ++c)
        for (std::size_t t = 0; t < n_terms; ++t) grad_w[c][t] += l2_penalty * weights[c][t];
    return {std::move(grad_w), std::move(grad_b)};
}

// Multiclass logistic regression trained with deterministic full-batch
// gradient descent from zero initialization.
inline LrModel lr_train(const DocTermMatrix& matrix, const std::vector<SentimentLabel>& labels,
                        const Vocabulary& vocab, const LrConfig& config,
                        const std::optional<std::vector<SentimentLabel>>& classes = std::nullopt) {
    if (matrix.rows.size() != labels.size())
        throw ValidationError("matrix and labels must have the same length");
    if (matrix.rows.empty()) throw ValidationError("cannot train on an empty matrix");
    if (config.epochs < 1) throw ValidationError("epochs must be at least 1");
    if (!(config.learning_rate > 0.0)) throw ValidationError("learning_rate must be positive");

    LrModel model;
    model.config = config;
    model.vocab_size = vocab.size();
    if (classes) {
        model.classes = *classes;
    } else {
        for (SentimentLabel l : kAllLabels)
            if (std::find(labels.begin(), labels.end(), l) != labels.end())
                model.classes.push_back(l);
    }
    if (model.classes.size() < 2)
        throw ValidationError("logistic regression needs at least 2 classes in the training data");

    std::vector<std::size_t> label_idx(labels.size());
    for (std::size_t d = 0; d < labels.size(); ++d) {
        std::size_t c = model.classes.size();
        for (std::size_t i = 0; i < model.classes.size(); ++i)
            if (model.classes[i] == labels[d]) { c = i; break; }
        if (c == model.classes.size())
            throw ValidationError("row label not in the requested class set");
        label_idx[d] = c;
    }

    const std::size_t n_classes = model.classes.size();
    model.weights.assign(n_classes, std::vector<double>(vocab.size(), 0.0));
    model.bias.assign(n_classes, 0.0);
    model.loss_history.reserve(config.epochs);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        double loss = lr_loss(matrix, label_idx, model.weights, model.bias, config.l2_penalty);
        if (!std::isfinite(loss))
            throw DomainError("training diverged at epoch " + std::to_string(epoch + 1));
        model.loss_history.push_back(loss);
        auto [grad_w, grad_b] =
            lr_gradient(matrix, label_idx, model.weights, model.bias, config.l2_penalty);
        for (std::size_t c = 0; c < n_classes; ++c) {
            model.bias[c] -= config.learning_rate * grad_b[c];
            for (std::size_t t = 0; t < vocab.size(); ++t)
                model.weights[c][t] -= config.learning_rate * grad_w[c][t];
        }
    }
    return model;
}

// Class probabilities (softmax) and the arg-max label; ties go to the earlier
// class.
inline std::pair<SentimentLabel, std::vector<double>> lr_predict(
    const LrModel& model, const std::vector<std::pair<std::size_t, double>>& row) {
    for (const auto& [idx, _] : row)
        if (idx >= model.vocab_size) throw ValidationError("row index outside vocabulary");
    std::vector<double> p = lr_detail::softmax_probs(model.weights, model.bias, row);
    std::size_t best = 0;
    for (std::size_t c = 1; c < p.size(); ++c)
        if (p[c] > p[best]) best = c;
    return {model.classes[best], std::move(p)};
}

inline nlohmann::json lr_to_json(const LrModel& model) {
    nlohmann::json classes = nlohmann::json::array();
    for (SentimentLabel l : model.classes) classes.push_back(to_string(l));
    return {{"classes", classes},
            {"weights", model.weights},
            {"bias", model.bias},
            {"train_config",
             {{"learning_rate", model.config.learning_rate},
              {"epochs", model.config.epochs},
              {"l2_penalty", model.config.l2_penalty},
              {"seed", model.config.seed}}},
            {"vocab_size", model.vocab_size}};
}

inline LrModel lr_from_json(const nlohmann::json& j) {
    LrModel model;
    for (const auto& name : j.at("classes")) {
        auto label = parse_label(name.get<std::string>());
        if (!label) throw ValidationError("unknown class label in model file");
        model.classes.push_back(*label);
    }
    model.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    model.bias = j.at("bias").get<std::vector<double>>();
    const auto& c = j.at("train_config");
    model.config.learning_rate = c.at("learning_rate").get<double>();
    model.config.epochs = c.at("epochs").get<std::size_t>();
    model.config.l2_penalty = c.at("l2_penalty").get<double>();
    model.config.seed = c.at("seed").get<std::uint64_t>();
    model.vocab_size = j.at("vocab_size").get<std::size_t>();
    if (model.weights.size() != model.classes.size() || model.bias.size() != model.classes.size())
        throw ValidationError("model parameter shapes do not match the class list");
    for (const auto& row : model.weights)
        if (row.size() != model.vocab_size)
            throw ValidationError("model parameter shapes do not match the vocabulary");
    return model;
}

}  // namespace episent
