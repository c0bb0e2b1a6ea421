#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "episent/types.hpp"

namespace episent {

struct Vocabulary {
    std::vector<std::string> terms;                    // index -> term
    std::unordered_map<std::string, std::size_t> index;  // term -> dense index
    std::vector<std::size_t> df;                       // per-term document frequency
    std::size_t n_docs = 0;
    std::size_t max_features = 0;

    bool contains(const std::string& term) const { return index.contains(term); }
    std::size_t size() const { return terms.size(); }
};

// Sparse document-term rows: (term index, weight), indices strictly
// increasing, no explicit zeros.
struct DocTermMatrix {
    std::vector<std::vector<std::pair<std::size_t, double>>> rows;
};

// IDF as the printed formula ln(N / (1 + n_t)); zero and negative values are
// kept rather than floored.
inline double idf_value(std::size_t n_docs, std::size_t term_df) {
    return std::log(static_cast<double>(n_docs) / (1.0 + static_cast<double>(term_df)));
}

inline double idf(const std::string& term, const Vocabulary& vocab) {
    auto it = vocab.index.find(term);
    if (it == vocab.index.end()) throw std::out_of_range("term not in vocabulary: " + term);
    return idf_value(vocab.n_docs, vocab.df[it->second]);
}

// Ranks terms by total corpus TF-IDF mass (sum over documents of TF * IDF),
// ties broken lexicographically ascending, and keeps the top max_features.
inline Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs,
                                   std::size_t max_features) {
    if (docs.empty()) throw ValidationError("cannot build a vocabulary from an empty corpus");
    if (max_features == 0) throw ValidationError("max_features must be at least 1");

    const std::size_t n_docs = docs.size();
    std::map<std::string, std::size_t> df;
    for (const auto& doc : docs) {
        std::map<std::string, std::size_t> seen;
        for (const std::string& t : doc) ++seen[t];
        for (const auto& [t, _] : seen) ++df[t];
    }

    std::map<std::string, double> mass;
    for (const auto& doc : docs) {
        if (doc.empty()) continue;
        std::map<std::string, std::size_t> counts;
        for (const std::string& t : doc) ++counts[t];
        const double n_d = static_cast<double>(doc.size());
        for (const auto& [t, f] : counts)
            mass[t] += (static_cast<double>(f) / n_d) * idf_value(n_docs, df[t]);
    }

    std::vector<std::string> ranked;
    ranked.reserve(mass.size());
    for (const auto& [t, _] : mass) ranked.push_back(t);
    std::sort(ranked.begin(), ranked.end(), [&](const std::string& a, const std::string& b) {
        if (mass[a] != mass[b]) return mass[a] > mass[b];
        return a < b;
    });
    if (ranked.size() > max_features) ranked.resize(max_features);

    Vocabulary vocab;
    vocab.n_docs = n_docs;
    vocab.max_features = max_features;
    vocab.terms = std::move(ranked);
    vocab.df.reserve(vocab.terms.size());
    for (std::size_t i = 0; i < vocab.terms.size(); ++i) {
        vocab.index.emplace(vocab.terms[i], i);
        vocab.df.push_back(df[vocab.terms[i]]);
    }
    return vocab;
}

// TF-IDF rows: entry (d, t) = (f(t,d) / N_d) * idf(t). N_d counts every token
// of the document including out-of-vocabulary ones. Zero products are omitted.
inline DocTermMatrix transform(const std::vector<std::vector<std::string>>& docs,
                               const Vocabulary& vocab) {
    DocTermMatrix matrix;
    matrix.rows.reserve(docs.size());
    for (const auto& doc : docs) {
        std::vector<std::pair<std::size_t, double>> row;
        if (!doc.empty()) {
            std::map<std::size_t, std::size_t> counts;
            for (const std::string& t : doc) {
                auto it = vocab.index.find(t);
                if (it != vocab.index.end()) ++counts[it->second];
            }
            const double n_d = static_cast<double>(doc.size());
            row.reserve(counts.size());
            for (const auto& [idx, f] : counts) {
                double weight =
                    (static_cast<double>(f) / n_d) * idf_value(vocab.n_docs, vocab.df[idx]);
                if (weight != 0.0) row.emplace_back(idx, weight);
            }
        }
        matrix.rows.push_back(std::move(row));
    }
    return matrix;
}

// FNV-1a over the canonical vocabulary layout; used to refuse predictions
// against a model whose vocabulary does not match.
inline std::string vocab_digest(const Vocabulary& vocab) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix_byte = [&](unsigned char b) {
        h ^= b;
        h *= 1099511628211ULL;
    };
    auto mix_string = [&](const std::string& s) {
        for (char c : s) mix_byte(static_cast<unsigned char>(c));
        mix_byte(0);
    };
    auto mix_size = [&](std::size_t v) {
        for (int i = 0; i < 8; ++i) mix_byte(static_cast<unsigned char>(v >> (8 * i)));
    };
    mix_size(vocab.n_docs);
    mix_size(vocab.max_features);
    for (std::size_t i = 0; i < vocab.terms.size(); ++i) {
        mix_string(vocab.terms[i]);
        mix_size(vocab.df[i]);
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline nlohmann::json vocab_to_json(const Vocabulary& vocab) {
    nlohmann::json terms = nlohmann::json::object();
    for (std::size_t i = 0; i < vocab.terms.size(); ++i)
        terms[vocab.terms[i]] = {{"index", i}, {"df", vocab.df[i]}};
    return {{"terms", terms},
            {"n_docs", vocab.n_docs},
            {"max_features", vocab.max_features}};
}

inline Vocabulary vocab_from_json(const nlohmann::json& j) {
    Vocabulary vocab;
    vocab.n_docs = j.at("n_docs").get<std::size_t>();
    vocab.max_features = j.at("max_features").get<std::size_t>();
    const auto& terms = j.at("terms");
    vocab.terms.resize(terms.size());
    vocab.df.resize(terms.size());
    for (auto it = terms.begin(); it != terms.end(); ++it) {
        std::size_t idx = it.value().at("index").get<std::size_t>();
        if (idx >= vocab.terms.size())
            throw ValidationError("vocabulary index out of range for term '" + it.key() + "'");
        vocab.terms[idx] = it.key();
        vocab.df[idx] = it.value().at("df").get<std::size_t>();
        vocab.index.emplace(it.key(), idx);
    }
    if (vocab.index.size() != vocab.terms.size())
        throw ValidationError("vocabulary indices are not a bijection");
    return vocab;
}

inline nlohmann::json row_to_json(const std::vector<std::pair<std::size_t, double>>& row) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [idx, w] : row) entries.push_back({idx, w});
    return entries;
}

}  // namespace episent
