#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "episent/textprep.hpp"
#include "episent/types.hpp"

namespace episent {

enum class Domain { Covid, Mpox };

inline std::string_view to_string(Domain d) {
    return d == Domain::Covid ? "covid" : "mpox";
}

// Per-class probabilities exported by an external sentiment model.
struct ProbTriple {
    double p_neg = 0.0;
    double p_neu = 0.0;
    double p_pos = 0.0;

    bool valid() const {
        auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
        if (!unit(p_neg) || !unit(p_neu) || !unit(p_pos)) return false;
        double sum = p_neg + p_neu + p_pos;
        return sum >= 0.99 && sum <= 1.01;
    }
};

struct KeywordLexicon {
    std::unordered_map<std::string, double> base;  // token -> polarity in [-1, 1]
    std::unordered_set<std::string> positive_keywords;
    std::unordered_set<std::string> negative_keywords;
};

// Threshold scheme applied after polarity computation. Boundary values are
// Neutral: classification uses strict inequalities on both sides.
enum class ClassifyScheme { CovidRoberta, MpoxRoberta, CovidTextblob, MpoxTextblob };

struct SchemeThresholds {
    double positive;
    double negative;
};

inline SchemeThresholds thresholds(ClassifyScheme scheme) {
    switch (scheme) {
        case ClassifyScheme::CovidRoberta: return {0.3, -0.2};
        case ClassifyScheme::MpoxRoberta: return {0.1, -0.2};
        case ClassifyScheme::CovidTextblob: return {0.15, -0.1};
        case ClassifyScheme::MpoxTextblob: return {0.05, -0.2};
    }
    return {0.0, 0.0};
}

inline ClassifyScheme roberta_scheme(Domain d) {
    return d == Domain::Covid ? ClassifyScheme::CovidRoberta : ClassifyScheme::MpoxRoberta;
}

inline ClassifyScheme textblob_scheme(Domain d) {
    return d == Domain::Covid ? ClassifyScheme::CovidTextblob : ClassifyScheme::MpoxTextblob;
}

// Occurrences (with multiplicity) of positive and negative keywords.
inline std::pair<std::size_t, std::size_t> count_keywords(std::span<const std::string> tokens,
                                                          const KeywordLexicon& lexicon) {
    std::size_t pos = 0, neg = 0;
    for (const std::string& t : tokens) {
        if (lexicon.positive_keywords.contains(t)) ++pos;
        if (lexicon.negative_keywords.contains(t)) ++neg;
    }
    return {pos, neg};
}

// Mean of the base-lexicon values of matched tokens; 0 when nothing matches.
inline double base_polarity(std::span<const std::string> tokens, const KeywordLexicon& lexicon) {
    double sum = 0.0;
    std::size_t matched = 0;
    for (const std::string& t : tokens) {
        auto it = lexicon.base.find(t);
        if (it != lexicon.base.end()) {
            sum += it->second;
            ++matched;
        }
    }
    return matched == 0 ? 0.0 : sum / static_cast<double>(matched);
}

// COVID domain bias: the negative branch wins. Any negative keyword drags the
// polarity down by 0.6 per occurrence and caps it at -0.3; otherwise positive
// keywords add 0.4 each plus a 0.2 boost, floored at 0.2.
inline double adjust_covid(double polarity, std::size_t pos_count, std::size_t neg_count) {
    if (neg_count > 0)
        return std::min(polarity - 0.6 * static_cast<double>(neg_count), -0.3);
    if (pos_count > 0)
        return std::max(polarity + 0.4 * static_cast<double>(pos_count) + 0.2, 0.2);
    return polarity;
}

// Monkeypox domain bias: the positive branch wins. Positive keywords add 0.6
// each plus a 0.3 boost (withheld when negative keywords co-occur), capped at
// 0.95; otherwise negative keywords subtract 0.2 each, floored at -0.5.
inline double adjust_mpox(double polarity, std::size_t pos_count, std::size_t neg_count) {
    if (pos_count > 0) {
        double boost = neg_count == 0 ? 0.3 : 0.0;
        return std::min(polarity + 0.6 * static_cast<double>(pos_count) + boost, 0.95);
    }
    if (neg_count > 0)
        return std::max(polarity - 0.2 * static_cast<double>(neg_count), -0.5);
    return polarity;
}

// Polarity from an external model's probability triple, domain-biased:
// covid scales by 3 and shifts by -0.5, mpox scales by 4 and shifts by -1.2.
inline double transformer_polarity(const ProbTriple& probs, Domain domain) {
    double diff = probs.p_pos - probs.p_neg;
    return domain == Domain::Covid ? diff * 3.0 - 0.5 : diff * 4.0 - 1.2;
}

inline SentimentLabel classify(double polarity, ClassifyScheme scheme) {
    SchemeThresholds t = thresholds(scheme);
    if (polarity > t.positive) return SentimentLabel::Positive;
    if (polarity < t.negative) return SentimentLabel::Negative;
    return SentimentLabel::Neutral;
}

// Lexicon path: base polarity -> domain adjustment -> threshold scheme.
inline std::pair<double, SentimentLabel> label_document(const CleanDocument& doc,
                                                        const KeywordLexicon& lexicon,
                                                        Domain domain) {
    auto [pos_count, neg_count] = count_keywords(doc.tokens, lexicon);
    double polarity = base_polarity(doc.tokens, lexicon);
    polarity = domain == Domain::Covid ? adjust_covid(polarity, pos_count, neg_count)
                                       : adjust_mpox(polarity, pos_count, neg_count);
    return {polarity, classify(polarity, textblob_scheme(domain))};
}

struct LabeledRecord {
    std::string id;
    double polarity = 0.0;
    SentimentLabel label = SentimentLabel::Neutral;
};

// Reads JSON Lines of {id, p_neg, p_neu, p_pos} and applies the domain's
// transformer polarity and threshold scheme.
inline std::vector<LabeledRecord> label_from_probs(const std::filesystem::path& probs_file,
                                                   Domain domain) {
    std::ifstream in(probs_file);
    if (!in) throw IoError("cannot open probability file: " + probs_file.string());
    std::vector<LabeledRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (corpus_detail::trim(line).empty()) continue;
        nlohmann::json j;
        ProbTriple probs;
        std::string id;
        try {
            j = nlohmann::json::parse(line);
            id = j.at("id").get<std::string>();
            probs.p_neg = j.at("p_neg").get<double>();
            probs.p_neu = j.at("p_neu").get<double>();
            probs.p_pos = j.at("p_pos").get<double>();
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("probability file line " + std::to_string(lineno) + ": " +
                                  e.what());
        }
        if (!probs.valid())
            throw ValidationError("invalid probability triple for id '" + id + "'");
        double polarity = transformer_polarity(probs, domain);
        out.push_back({std::move(id), polarity, classify(polarity, roberta_scheme(domain))});
    }
    return out;
}

// --- data files ---

// Tab-separated "term<TAB>value" with value in [-1, 1].
inline std::unordered_map<std::string, double> load_base_lexicon(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open sentiment lexicon: " + path.string());
    std::unordered_map<std::string, double> base;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (corpus_detail::trim(line).empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ValidationError("lexicon line " + std::to_string(lineno) +
                                  ": expected '<term>\\t<value>'");
        std::string term = corpus_detail::to_lower(corpus_detail::trim(line.substr(0, tab)));
        auto value = corpus_detail::parse_double(line.substr(tab + 1));
        if (term.empty() || !value)
            throw ValidationError("lexicon line " + std::to_string(lineno) + ": malformed entry");
        if (*value < -1.0 || *value > 1.0)
            throw ValidationError("lexicon line " + std::to_string(lineno) +
                                  ": value outside [-1, 1]");
        base[std::move(term)] = *value;
    }
    return base;
}

// Tab-separated "term<TAB>positive|negative"; the two sets must be disjoint.
inline void load_keywords(const std::filesystem::path& path, KeywordLexicon& lexicon) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open keyword file: " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (corpus_detail::trim(line).empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ValidationError("keyword file line " + std::to_string(lineno) +
                                  ": expected '<term>\\t<positive|negative>'");
        std::string term = corpus_detail::to_lower(corpus_detail::trim(line.substr(0, tab)));
        std::string kind = corpus_detail::to_lower(corpus_detail::trim(line.substr(tab + 1)));
        if (term.empty())
            throw ValidationError("keyword file line " + std::to_string(lineno) + ": empty term");
        if (kind == "positive")
            lexicon.positive_keywords.insert(term);
        else if (kind == "negative")
            lexicon.negative_keywords.insert(term);
        else
            throw ValidationError("keyword file line " + std::to_string(lineno) +
                                  ": unknown keyword class '" + kind + "'");
    }
    for (const std::string& t : lexicon.positive_keywords)
        if (lexicon.negative_keywords.contains(t))
            throw ValidationError("keyword '" + t + "' listed as both positive and negative");
}

inline nlohmann::json labeled_to_json(const LabeledRecord& rec) {
    return {{"id", rec.id}, {"polarity", rec.polarity}, {"label", to_string(rec.label)}};
}

inline LabeledRecord labeled_from_json(const nlohmann::json& j) {
    LabeledRecord rec;
    rec.id = j.at("id").get<std::string>();
    rec.polarity = j.at("polarity").get<double>();
    auto label = parse_label(j.at("label").get<std::string>());
    if (!label) throw ValidationError("unknown label for id '" + rec.id + "'");
    rec.label = *label;
    return rec;
}

}  // namespace episent
