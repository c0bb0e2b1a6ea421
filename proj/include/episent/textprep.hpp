#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "episent/corpus.hpp"
#include "episent/porter.hpp"
#include "episent/types.hpp"

namespace episent {

struct PrepConfig {
    bool lowercase = true;
    bool strip_urls = true;
    bool strip_mentions = true;
    bool strip_hashtags = true;
    bool strip_numeral_words = true;
    bool strip_punctuation = true;
    bool expand_emojis = true;
    bool drop_stopwords = true;
    bool do_stem = true;
    bool do_lemmatize = true;
    std::unordered_set<std::string> stopwords;
    std::map<std::string, std::string> emoji_map;  // UTF-8 sequence -> underscore-joined name
    std::unordered_map<std::string, std::string> lemma_table;
};

struct CleanDocument {
    std::string id;
    std::vector<std::string> tokens;
    std::vector<std::string> stems;
    std::vector<std::string> lemmas;
};

namespace textprep_detail {

inline constexpr char32_t kInvalid = 0xFFFD;

// Minimal UTF-8 decode; malformed bytes come back as U+FFFD (one byte wide)
// so they fall into the punctuation-stripping bucket.
inline char32_t next_codepoint(std::string_view s, std::size_t& i) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    auto cont = [&](std::size_t k) {
        return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(1)) {
        char32_t cp = (b0 & 0x1F) << 6 | (static_cast<unsigned char>(s[i + 1]) & 0x3F);
        i += 2;
        return cp;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        char32_t cp = (b0 & 0x0F) << 12 | (static_cast<unsigned char>(s[i + 1]) & 0x3F) << 6 |
                      (static_cast<unsigned char>(s[i + 2]) & 0x3F);
        i += 3;
        return cp;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        char32_t cp = (b0 & 0x07) << 18 | (static_cast<unsigned char>(s[i + 1]) & 0x3F) << 12 |
                      (static_cast<unsigned char>(s[i + 2]) & 0x3F) << 6 |
                      (static_cast<unsigned char>(s[i + 3]) & 0x3F);
        i += 4;
        return cp;
    }
    ++i;
    return kInvalid;
}

inline bool is_space_cp(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0xA0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
        case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

// Punctuation and symbol codepoints (approximation of Unicode categories P
// and S over the blocks that occur in tweet data). Letters, digits and
// non-symbol scripts pass through.
inline bool is_punct_or_symbol_cp(char32_t cp) {
    if (cp < 0x80) {
        if (cp == '_') return false;
        return std::ispunct(static_cast<int>(cp)) != 0 ||
               (cp < 0x20 && !is_space_cp(cp)) || cp == 0x7F;
    }
    if (cp >= 0xA1 && cp <= 0xBF) return true;   // Latin-1 punctuation block
    if (cp == 0xD7 || cp == 0xF7) return true;   // multiply / divide signs
    if (cp >= 0x2000 && cp <= 0x206F) return !is_space_cp(cp);
    if (cp >= 0x20A0 && cp <= 0x20CF) return true;   // currency
    if (cp >= 0x2100 && cp <= 0x2BFF) return true;   // letterlike..misc symbols
    if (cp >= 0x3000 && cp <= 0x303F) return !is_space_cp(cp);
    if (cp >= 0xFE00 && cp <= 0xFE0F) return true;   // variation selectors
    if (cp >= 0xFE30 && cp <= 0xFE4F) return true;
    if (cp >= 0xFF01 && cp <= 0xFF20) return true;   // fullwidth punctuation
    if (cp >= 0xFF3B && cp <= 0xFF40) return true;
    if (cp >= 0xFF5B && cp <= 0xFF65) return true;
    if (cp >= 0x1F000 && cp <= 0x1FFFF) return true; // emoji planes
    if (cp == 0xFFFD) return true;
    return false;
}

inline std::vector<std::string> split_whitespace(std::string_view s) {
    std::vector<std::string> words;
    std::string current;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t start = i;
        char32_t cp = next_codepoint(s, i);
        if (is_space_cp(cp)) {
            if (!current.empty()) {
                words.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.append(s.substr(start, i - start));
        }
    }
    if (!current.empty()) words.push_back(std::move(current));
    return words;
}

inline bool contains_url(std::string_view word) {
    return word.find("http://") != std::string_view::npos ||
           word.find("https://") != std::string_view::npos ||
           word.find("www.") != std::string_view::npos;
}

inline bool contains_digit(std::string_view word) {
    return std::any_of(word.begin(), word.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
}

inline std::string expand_emojis(std::string_view text,
                                 const std::map<std::string, std::string>& emoji_map) {
    // Longest emoji sequence wins so multi-codepoint emojis are not split.
    std::vector<const std::pair<const std::string, std::string>*> by_length;
    by_length.reserve(emoji_map.size());
    for (const auto& entry : emoji_map) by_length.push_back(&entry);
    std::stable_sort(by_length.begin(), by_length.end(),
                     [](const auto* a, const auto* b) { return a->first.size() > b->first.size(); });

    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const std::pair<const std::string, std::string>* hit = nullptr;
        for (const auto* entry : by_length) {
            const std::string& key = entry->first;
            if (!key.empty() && text.size() - i >= key.size() &&
                text.compare(i, key.size(), key) == 0) {
                hit = entry;
                break;
            }
        }
        if (hit != nullptr) {
            out.push_back(' ');
            out.append(hit->second);
            out.push_back(' ');
            i += hit->first.size();
        } else {
            out.push_back(text[i]);
            ++i;
        }
    }
    return out;
}

}  // namespace textprep_detail

// Normalization chain, in fixed order: emoji expansion, lowercasing, URL /
// mention / hashtag / digit-word removal (whole whitespace-delimited words),
// punctuation stripping (underscores survive), whitespace collapsing.
inline std::string normalize_text(std::string_view raw, const PrepConfig& config) {
    using namespace textprep_detail;

    std::string s = config.expand_emojis ? expand_emojis(raw, config.emoji_map)
                                         : std::string(raw);
    if (config.lowercase) {
        for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }

    std::vector<std::string> words = split_whitespace(s);

    std::vector<std::string> kept;
    kept.reserve(words.size());
    for (std::string& word : words) {
        if (config.strip_urls && contains_url(word)) continue;
        if (config.strip_mentions && word.front() == '@') continue;
        if (config.strip_hashtags && word.front() == '#') continue;
        if (config.strip_numeral_words && contains_digit(word)) continue;
        if (config.strip_punctuation) {
            std::string scrubbed;
            scrubbed.reserve(word.size());
            std::size_t i = 0;
            while (i < word.size()) {
                std::size_t start = i;
                char32_t cp = next_codepoint(word, i);
                if (is_punct_or_symbol_cp(cp))
                    scrubbed.push_back(' ');
                else
                    scrubbed.append(word.substr(start, i - start));
            }
            for (std::string& piece : split_whitespace(scrubbed))
                kept.push_back(std::move(piece));
        } else {
            kept.push_back(std::move(word));
        }
    }

    std::string out;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += kept[i];
    }
    return out;
}

inline std::vector<std::string> tokenize(std::string_view clean) {
    return textprep_detail::split_whitespace(clean);
}

inline std::vector<std::string> filter_stopwords(
    const std::vector<std::string>& tokens,
    const std::unordered_set<std::string>& stopword_list) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const std::string& t : tokens)
        if (!stopword_list.contains(t)) out.push_back(t);
    return out;
}

inline std::vector<std::string> stem_tokens(const std::vector<std::string>& tokens) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const std::string& t : tokens) out.push_back(porter_stem(t));
    return out;
}

inline std::vector<std::string> lemmatize_tokens(
    const std::vector<std::string>& tokens,
    const std::unordered_map<std::string, std::string>& lemma_table) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const std::string& t : tokens) {
        auto it = lemma_table.find(t);
        out.push_back(it == lemma_table.end() ? t : it->second);
    }
    return out;
}

inline CleanDocument preprocess(const RawRecord& record, const PrepConfig& config) {
    CleanDocument doc;
    doc.id = record.id;
    doc.tokens = tokenize(normalize_text(record.text, config));
    if (config.drop_stopwords) doc.tokens = filter_stopwords(doc.tokens, config.stopwords);
    if (config.do_stem) doc.stems = stem_tokens(doc.tokens);
    if (config.do_lemmatize) doc.lemmas = lemmatize_tokens(doc.tokens, config.lemma_table);
    return doc;
}

inline std::string render_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

// --- data files: one entry per line, tab-separated for maps ---

inline std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stopword list: " + path.string());
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        std::string w = corpus_detail::to_lower(corpus_detail::trim(line));
        if (!w.empty()) words.insert(std::move(w));
    }
    return words;
}

inline std::map<std::string, std::string> load_emoji_map(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open emoji map: " + path.string());
    std::map<std::string, std::string> map;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (corpus_detail::trim(line).empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ValidationError("emoji map line " + std::to_string(lineno) +
                                  ": expected '<emoji>\\t<name>'");
        std::string emoji = line.substr(0, tab);
        std::string name = corpus_detail::trim(line.substr(tab + 1));
        for (char& c : name)
            if (std::isspace(static_cast<unsigned char>(c))) c = '_';
        if (emoji.empty() || name.empty())
            throw ValidationError("emoji map line " + std::to_string(lineno) + ": empty field");
        map[emoji] = name;
    }
    return map;
}

inline std::unordered_map<std::string, std::string> load_lemma_table(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open lemma table: " + path.string());
    std::unordered_map<std::string, std::string> table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (corpus_detail::trim(line).empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ValidationError("lemma table line " + std::to_string(lineno) +
                                  ": expected '<form>\\t<lemma>'");
        std::string form = corpus_detail::trim(line.substr(0, tab));
        std::string lemma = corpus_detail::trim(line.substr(tab + 1));
        if (form.empty() || lemma.empty())
            throw ValidationError("lemma table line " + std::to_string(lineno) + ": empty field");
        table[std::move(form)] = std::move(lemma);
    }
    return table;
}

inline nlohmann::json doc_to_json(const CleanDocument& doc) {
    return {{"id", doc.id}, {"tokens", doc.tokens}, {"stems", doc.stems}, {"lemmas", doc.lemmas}};
}

inline CleanDocument doc_from_json(const nlohmann::json& j) {
    CleanDocument doc;
    doc.id = j.at("id").get<std::string>();
    doc.tokens = j.at("tokens").get<std::vector<std::string>>();
    if (j.contains("stems")) doc.stems = j["stems"].get<std::vector<std::string>>();
    if (j.contains("lemmas")) doc.lemmas = j["lemmas"].get<std::vector<std::string>>();
    return doc;
}

}  // namespace episent
