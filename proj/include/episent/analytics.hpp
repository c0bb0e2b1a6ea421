#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "episent/stats.hpp"
#include "episent/types.hpp"

namespace episent {

using TokenDocs = std::vector<std::vector<std::string>>;

// Total occurrence counts, descending, ties lexicographic ascending.
inline std::vector<std::pair<std::string, std::size_t>> word_frequency(const TokenDocs& docs,
                                                                       std::size_t top_k) {
    if (top_k == 0) throw ValidationError("top_k must be at least 1");
    std::map<std::string, std::size_t> counts;
    for (const auto& doc : docs)
        for (const std::string& t : doc) ++counts[t];
    std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > top_k) ranked.resize(top_k);
    return ranked;
}

// count / max_count over the (optionally label-filtered) docs; the maximum
// weight is exactly 1.0 on nonempty input.
inline std::map<std::string, double> wordcloud_weights(
    const TokenDocs& docs, const std::vector<SentimentLabel>* labels = nullptr,
    std::optional<SentimentLabel> label_filter = std::nullopt) {
    if (label_filter && (labels == nullptr || labels->size() != docs.size()))
        throw ValidationError("label filter requires one label per document");
    std::map<std::string, std::size_t> counts;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        if (label_filter && (*labels)[d] != *label_filter) continue;
        for (const std::string& t : docs[d]) ++counts[t];
    }
    std::map<std::string, double> weights;
    if (counts.empty()) return weights;
    std::size_t max_count = 0;
    for (const auto& [_, c] : counts) max_count = std::max(max_count, c);
    for (const auto& [t, c] : counts)
        weights[t] = static_cast<double>(c) / static_cast<double>(max_count);
    return weights;
}

struct DistributionSummary {
    std::array<double, 3> percent{};  // indexed by label order Positive, Negative, Neutral
    std::size_t total_count = 0;

    double percent_of(SentimentLabel l) const { return percent[label_index(l)]; }
};

inline DistributionSummary sentiment_distribution(const std::vector<SentimentLabel>& labels) {
    if (labels.empty()) throw ValidationError("cannot summarize an empty label list");
    DistributionSummary summary;
    summary.total_count = labels.size();
    std::array<std::size_t, 3> counts{};
    for (SentimentLabel l : labels) ++counts[label_index(l)];
    for (std::size_t i = 0; i < 3; ++i)
        summary.percent[i] =
            100.0 * static_cast<double>(counts[i]) / static_cast<double>(labels.size());
    return summary;
}

struct CfrResult {
    std::uint64_t deaths = 0;
    std::uint64_t cases = 0;
    double cfr_percent = 0.0;
    bool deaths_exceed_cases = false;
};

inline CfrResult cfr(std::uint64_t deaths, std::uint64_t cases) {
    if (cases == 0) throw DomainError("case fatality rate is undefined for zero cases");
    CfrResult result;
    result.deaths = deaths;
    result.cases = cases;
    result.cfr_percent = 100.0 * static_cast<double>(deaths) / static_cast<double>(cases);
    result.deaths_exceed_cases = deaths > cases;
    return result;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ValidationError("pearson requires equal-length inputs");
    if (x.size() < 2) throw ValidationError("pearson requires at least 2 points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DomainError("correlation is undefined for zero-variance input");
    double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

struct ChiSquareResult {
    double statistic = 0.0;
    std::size_t df = 0;
    double p_value = 1.0;
};

namespace analytics_detail {

// Pearson chi-square over a contingency table. With allow_zero_margins set,
// cells whose expected count is zero contribute nothing while the degrees of
// freedom keep the full table shape.
inline ChiSquareResult chi_square_impl(const std::vector<std::vector<std::uint64_t>>& table,
                                       bool allow_zero_margins) {
    if (table.empty() || table[0].empty()) throw ValidationError("chi-square table is empty");
    const std::size_t rows = table.size();
    const std::size_t cols = table[0].size();
    for (const auto& row : table)
        if (row.size() != cols) throw ValidationError("chi-square table is ragged");
    if (rows < 2 || cols < 2)
        throw ValidationError("chi-square table needs at least 2 rows and 2 columns");

    std::vector<double> row_sum(rows, 0.0), col_sum(cols, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            double v = static_cast<double>(table[i][j]);
            row_sum[i] += v;
            col_sum[j] += v;
            total += v;
        }
    if (total == 0.0) throw ValidationError("chi-square table has no observations");
    if (!allow_zero_margins) {
        for (double s : row_sum)
            if (s == 0.0) throw ValidationError("chi-square table has a zero row marginal");
        for (double s : col_sum)
            if (s == 0.0) throw ValidationError("chi-square table has a zero column marginal");
    }

    ChiSquareResult result;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            double expected = row_sum[i] * col_sum[j] / total;
            if (expected == 0.0) continue;
            double diff = static_cast<double>(table[i][j]) - expected;
            result.statistic += diff * diff / expected;
        }
    result.df = (rows - 1) * (cols - 1);
    result.p_value = chi2_sf(result.statistic, result.df);
    return result;
}

}  // namespace analytics_detail

inline ChiSquareResult chi_square(const std::vector<std::vector<std::uint64_t>>& table) {
    return analytics_detail::chi_square_impl(table, false);
}

// Per category, total keyword occurrences across all docs.
inline std::map<std::string, std::uint64_t> demographic_mentions(
    const TokenDocs& docs, const std::map<std::string, std::set<std::string>>& category_lexicons) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& [category, _] : category_lexicons) counts[category] = 0;
    for (const auto& doc : docs)
        for (const std::string& t : doc)
            for (const auto& [category, keywords] : category_lexicons)
                if (keywords.contains(t)) ++counts[category];
    return counts;
}

struct ComparisonReport {
    std::string left_name;
    std::string right_name;
    DistributionSummary left;
    DistributionSummary right;
    double pearson_r = 0.0;
    ChiSquareResult chi2;
};

// Side-by-side distributions, Pearson correlation over the aligned
// (Positive, Negative, Neutral) percentage vectors, and a chi-square test of
// label-by-corpus independence over the 2x3 count table. A label missing from
// both corpora leaves a zero column; its cells are skipped while df stays
// (2-1)*(3-1).
inline ComparisonReport compare_corpora(const std::vector<SentimentLabel>& left_labels,
                                        const std::vector<SentimentLabel>& right_labels,
                                        const std::string& left_name,
                                        const std::string& right_name) {
    ComparisonReport report;
    report.left_name = left_name;
    report.right_name = right_name;
    report.left = sentiment_distribution(left_labels);
    report.right = sentiment_distribution(right_labels);

    std::vector<double> left_pct(report.left.percent.begin(), report.left.percent.end());
    std::vector<double> right_pct(report.right.percent.begin(), report.right.percent.end());
    report.pearson_r = pearson(left_pct, right_pct);

    std::vector<std::vector<std::uint64_t>> table(2, std::vector<std::uint64_t>(3, 0));
    for (SentimentLabel l : left_labels) ++table[0][label_index(l)];
    for (SentimentLabel l : right_labels) ++table[1][label_index(l)];
    report.chi2 = analytics_detail::chi_square_impl(table, true);
    return report;
}

// --- JSON export ---

inline nlohmann::json distribution_to_json(const DistributionSummary& summary) {
    nlohmann::json j;
    for (SentimentLabel l : kAllLabels)
        j[std::string(to_string(l))] = summary.percent_of(l);
    j["total_count"] = summary.total_count;
    return j;
}

inline nlohmann::json cfr_to_json(const CfrResult& result) {
    nlohmann::json j{{"deaths", result.deaths},
                     {"cases", result.cases},
                     {"cfr_percent", result.cfr_percent}};
    if (result.deaths_exceed_cases) j["warning"] = "deaths exceed cases";
    return j;
}

inline nlohmann::json chi_square_to_json(const ChiSquareResult& result) {
    return {{"statistic", result.statistic}, {"df", result.df}, {"p_value", result.p_value}};
}

inline nlohmann::json comparison_to_json(const ComparisonReport& report) {
    return {{"left", {{"name", report.left_name},
                      {"distribution", distribution_to_json(report.left)}}},
            {"right", {{"name", report.right_name},
                       {"distribution", distribution_to_json(report.right)}}},
            {"pearson_r", report.pearson_r},
            {"chi_square", chi_square_to_json(report.chi2)}};
}

}  // namespace episent
