#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "episent/csv.hpp"
#include "episent/types.hpp"

namespace episent {

struct SentimentScores {
    double compound = 0.0;
    double neg = 0.0;
    double neu = 0.0;
    double pos = 0.0;
};

struct RawRecord {
    std::string id;
    std::optional<std::int64_t> created_at;  // epoch seconds, UTC
    std::string text;
    std::optional<std::string> place;
    std::optional<SentimentLabel> provided_sentiment;
    std::optional<SentimentScores> scores;
};

struct CorpusMeta {
    std::string name;
    std::size_t record_count = 0;
    std::size_t dropped_missing = 0;
    std::optional<std::pair<std::int64_t, std::int64_t>> date_range;
};

enum class CorpusSchema { Covid, Mpox };

// True when scores are absent, or neg/neu/pos each lie in [0,1], compound in
// [-1,1], and neg+neu+pos sums to 1 within +/-0.01.
inline bool validate_scores(const RawRecord& record) {
    if (!record.scores) return true;
    const SentimentScores& s = *record.scores;
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!unit(s.neg) || !unit(s.neu) || !unit(s.pos)) return false;
    if (s.compound < -1.0 || s.compound > 1.0) return false;
    double sum = s.neg + s.neu + s.pos;
    return sum >= 0.99 && sum <= 1.01;
}

namespace corpus_detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::string to_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

inline bool is_missing_text(std::string_view cell) {
    std::string t = to_lower(trim(cell));
    return t.empty() || t == "nan";
}

inline std::optional<double> parse_double(std::string_view cell) {
    std::string t = trim(cell);
    if (t.empty()) return std::nullopt;
    try {
        std::size_t pos = 0;
        double v = std::stod(t, &pos);
        if (pos != t.size()) return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace corpus_detail

// Accepts "YYYY-MM-DD HH:MM:SS", "YYYY-MM-DDTHH:MM:SS" (optionally with a
// trailing "Z" or "+00:00") and bare "YYYY-MM-DD"; all interpreted as UTC.
inline std::optional<std::int64_t> parse_timestamp(std::string_view raw) {
    std::string s = corpus_detail::trim(raw);
    if (s.size() > 6 && s.compare(s.size() - 6, 6, "+00:00") == 0) s.resize(s.size() - 6);
    if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) s.pop_back();

    std::tm tm{};
    int year, month, day, hour = 0, minute = 0, second = 0;
    char sep;
    int matched = std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%d", &year, &month, &day, &sep,
                              &hour, &minute, &second);
    if (matched == 3) {
        // date only
    } else if (matched == 7) {
        if (sep != ' ' && sep != 'T') return std::nullopt;
    } else {
        return std::nullopt;
    }
    if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;
    if (hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0 || second > 60)
        return std::nullopt;
    tm.tm_year = year - 1900;
    tm.tm_mon = month - 1;
    tm.tm_mday = day;
    tm.tm_hour = hour;
    tm.tm_min = minute;
    tm.tm_sec = second;
    std::time_t t = timegm(&tm);
    if (t == static_cast<std::time_t>(-1)) return std::nullopt;
    return static_cast<std::int64_t>(t);
}

inline std::string format_timestamp(std::int64_t epoch_seconds) {
    std::time_t t = static_cast<std::time_t>(epoch_seconds);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

// Parses one of the two dataset CSV layouts into validated records. Rows with
// an empty, whitespace-only or literal "nan" text cell are dropped and
// counted. Column order is free; extra columns are ignored.
inline std::pair<std::vector<RawRecord>, CorpusMeta> load_corpus(
    const std::filesystem::path& path, CorpusSchema schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file: " + path.string());

    std::vector<std::vector<std::string>> rows = read_csv(in);
    if (rows.empty()) throw SchemaError("corpus file has no header row: " + path.string());

    std::unordered_map<std::string, std::size_t> columns;
    for (std::size_t i = 0; i < rows[0].size(); ++i)
        columns.emplace(corpus_detail::to_lower(corpus_detail::trim(rows[0][i])), i);

    auto require = [&](std::string_view name) -> std::size_t {
        auto it = columns.find(std::string(name));
        if (it == columns.end())
            throw SchemaError("missing required column '" + std::string(name) + "' in " +
                              path.string());
        return it->second;
    };
    auto require_any = [&](std::string_view a, std::string_view b) -> std::size_t {
        if (auto it = columns.find(std::string(a)); it != columns.end()) return it->second;
        if (auto it = columns.find(std::string(b)); it != columns.end()) return it->second;
        throw SchemaError("missing required column '" + std::string(a) + "' (or '" +
                          std::string(b) + "') in " + path.string());
    };
    auto optional_col = [&](std::string_view name) -> std::optional<std::size_t> {
        auto it = columns.find(std::string(name));
        if (it == columns.end()) return std::nullopt;
        return it->second;
    };

    std::size_t id_col, date_col, text_col;
    std::optional<std::size_t> place_col;
    std::size_t sentiment_col;
    if (schema == CorpusSchema::Covid) {
        id_col = require("id");
        date_col = require("date");
        text_col = require_any("original_text", "clean_tweet");
        place_col = require("place");
        sentiment_col = require("sentiment");
    } else {
        id_col = require("id");
        date_col = require("created_at");
        text_col = require_any("tweet", "text");
        place_col = optional_col("place");
        sentiment_col = require("sentiment");
    }
    auto compound_col = optional_col("compound");
    auto neg_col = optional_col("neg");
    auto neu_col = optional_col("neu");
    auto pos_col = optional_col("pos");
    const bool has_scores =
        compound_col && neg_col && neu_col && pos_col;

    std::vector<RawRecord> records;
    CorpusMeta meta;
    meta.name = path.stem().string();
    std::unordered_set<std::string> seen_ids;

    auto cell = [&](const std::vector<std::string>& row, std::size_t col) -> std::string {
        return col < row.size() ? row[col] : std::string();
    };

    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        std::string text = cell(row, text_col);
        if (corpus_detail::is_missing_text(text)) {
            ++meta.dropped_missing;
            continue;
        }
        RawRecord rec;
        rec.id = corpus_detail::trim(cell(row, id_col));
        if (rec.id.empty())
            throw ValidationError("row " + std::to_string(r + 1) + " has an empty id");
        if (!seen_ids.insert(rec.id).second)
            throw ValidationError("duplicate id '" + rec.id + "' in " + path.string());
        rec.text = std::move(text);
        rec.created_at = parse_timestamp(cell(row, date_col));
        if (place_col) {
            std::string place = corpus_detail::trim(cell(row, *place_col));
            if (!place.empty() && corpus_detail::to_lower(place) != "nan")
                rec.place = std::move(place);
        }
        rec.provided_sentiment = parse_label(corpus_detail::trim(cell(row, sentiment_col)));
        if (has_scores) {
            auto compound = corpus_detail::parse_double(cell(row, *compound_col));
            auto neg = corpus_detail::parse_double(cell(row, *neg_col));
            auto neu = corpus_detail::parse_double(cell(row, *neu_col));
            auto pos = corpus_detail::parse_double(cell(row, *pos_col));
            if (compound && neg && neu && pos) {
                double sum = *neg + *neu + *pos;
                if (sum >= 0.99 && sum <= 1.01)
                    rec.scores = SentimentScores{*compound, *neg, *neu, *pos};
            }
        }
        if (rec.created_at) {
            if (!meta.date_range) {
                meta.date_range = {*rec.created_at, *rec.created_at};
            } else {
                meta.date_range->first = std::min(meta.date_range->first, *rec.created_at);
                meta.date_range->second = std::max(meta.date_range->second, *rec.created_at);
            }
        }
        records.push_back(std::move(rec));
    }
    meta.record_count = records.size();
    return {std::move(records), std::move(meta)};
}

inline nlohmann::json record_to_json(const RawRecord& rec) {
    nlohmann::json j;
    j["id"] = rec.id;
    if (rec.created_at) j["created_at"] = format_timestamp(*rec.created_at);
    j["text"] = rec.text;
    if (rec.place) j["place"] = *rec.place;
    if (rec.provided_sentiment) j["provided_sentiment"] = to_string(*rec.provided_sentiment);
    if (rec.scores)
        j["scores"] = {{"compound", rec.scores->compound},
                       {"neg", rec.scores->neg},
                       {"neu", rec.scores->neu},
                       {"pos", rec.scores->pos}};
    return j;
}

inline RawRecord record_from_json(const nlohmann::json& j) {
    RawRecord rec;
    rec.id = j.at("id").get<std::string>();
    rec.text = j.at("text").get<std::string>();
    if (j.contains("created_at")) rec.created_at = parse_timestamp(j["created_at"].get<std::string>());
    if (j.contains("place")) rec.place = j["place"].get<std::string>();
    if (j.contains("provided_sentiment"))
        rec.provided_sentiment = parse_label(j["provided_sentiment"].get<std::string>());
    if (j.contains("scores")) {
        const auto& s = j["scores"];
        rec.scores = SentimentScores{s.at("compound").get<double>(), s.at("neg").get<double>(),
                                     s.at("neu").get<double>(), s.at("pos").get<double>()};
    }
    return rec;
}

inline nlohmann::json meta_to_json(const CorpusMeta& meta) {
    nlohmann::json j;
    j["name"] = meta.name;
    j["record_count"] = meta.record_count;
    j["dropped_missing"] = meta.dropped_missing;
    if (meta.date_range)
        j["date_range"] = {{"min", format_timestamp(meta.date_range->first)},
                           {"max", format_timestamp(meta.date_range->second)}};
    return j;
}

}  // namespace episent
