#pragma once

#include <string>
#include <string_view>

// Classic Porter suffix-stripping stemmer. Operates on lowercase ASCII words;
// words shorter than three letters or containing characters outside [a-z]
// pass through unchanged.

namespace episent {

namespace porter_detail {

inline bool is_consonant(std::string_view w, std::size_t i) {
    char c = w[i];
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
    if (c == 'y') return i == 0 ? true : !is_consonant(w, i - 1);
    return true;
}

// The measure m of a stem: [C](VC)^m[V].
inline int measure(std::string_view stem) {
    const std::size_t n = stem.size();
    std::size_t i = 0;
    int m = 0;
    while (i < n && is_consonant(stem, i)) ++i;
    while (i < n) {
        while (i < n && !is_consonant(stem, i)) ++i;
        if (i >= n) break;
        ++m;
        while (i < n && is_consonant(stem, i)) ++i;
    }
    return m;
}

inline bool has_vowel(std::string_view stem) {
    for (std::size_t i = 0; i < stem.size(); ++i)
        if (!is_consonant(stem, i)) return true;
    return false;
}

inline bool ends_double_consonant(std::string_view w) {
    const std::size_t n = w.size();
    return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o: stem ends cvc where the final consonant is not w, x or y.
inline bool ends_cvc(std::string_view w) {
    const std::size_t n = w.size();
    if (n < 3) return false;
    if (!is_consonant(w, n - 3) || is_consonant(w, n - 2) || !is_consonant(w, n - 1)) return false;
    char last = w[n - 1];
    return last != 'w' && last != 'x' && last != 'y';
}

inline bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

// Within a step only the longest matching suffix is considered; if its
// condition fails no other rule of the step fires.
template <std::size_t N>
inline void apply_measured_step(std::string& w, const Rule (&rules)[N], int min_measure) {
    const Rule* best = nullptr;
    for (const Rule& r : rules) {
        if (ends_with(w, r.suffix) && (best == nullptr || r.suffix.size() > best->suffix.size()))
            best = &r;
    }
    if (best == nullptr) return;
    std::string_view stem(w.data(), w.size() - best->suffix.size());
    if (measure(stem) > min_measure) {
        w.resize(stem.size());
        w.append(best->replacement);
    }
}

}  // namespace porter_detail

inline std::string porter_stem(std::string_view word) {
    using namespace porter_detail;

    std::string w(word);
    if (w.size() <= 2) return w;
    for (char c : w)
        if (c < 'a' || c > 'z') return w;

    // Step 1a
    if (ends_with(w, "sses")) w.resize(w.size() - 2);
    else if (ends_with(w, "ies")) w.resize(w.size() - 2);
    else if (ends_with(w, "ss")) {}
    else if (ends_with(w, "s")) w.resize(w.size() - 1);

    // Step 1b
    bool cleanup = false;
    if (ends_with(w, "eed")) {
        if (measure(std::string_view(w).substr(0, w.size() - 3)) > 0) w.resize(w.size() - 1);
    } else if (ends_with(w, "ed")) {
        if (has_vowel(std::string_view(w).substr(0, w.size() - 2))) {
            w.resize(w.size() - 2);
            cleanup = true;
        }
    } else if (ends_with(w, "ing")) {
        if (has_vowel(std::string_view(w).substr(0, w.size() - 3))) {
            w.resize(w.size() - 3);
            cleanup = true;
        }
    }
    if (cleanup) {
        if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
            w.push_back('e');
        } else if (ends_double_consonant(w)) {
            char last = w.back();
            if (last != 'l' && last != 's' && last != 'z') w.pop_back();
        } else if (measure(w) == 1 && ends_cvc(w)) {
            w.push_back('e');
        }
    }

    // Step 1c
    if (ends_with(w, "y") && has_vowel(std::string_view(w).substr(0, w.size() - 1)))
        w.back() = 'i';

    // Step 2
    static constexpr Rule step2[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
    };
    apply_measured_step(w, step2, 0);

    // Step 3
    static constexpr Rule step3[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    };
    apply_measured_step(w, step3, 0);

    // Step 4: drop the suffix when the remaining stem has m > 1; "ion" only
    // after s or t.
    static constexpr std::string_view step4[] = {
        "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment",
        "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
    };
    const std::string_view* longest = nullptr;
    for (const std::string_view& s : step4) {
        if (ends_with(w, s) && (longest == nullptr || s.size() > longest->size())) longest = &s;
    }
    if (longest != nullptr) {
        std::string_view stem(w.data(), w.size() - longest->size());
        if (measure(stem) > 1) {
            if (*longest == "ion") {
                if (!stem.empty() && (stem.back() == 's' || stem.back() == 't'))
                    w.resize(stem.size());
            } else {
                w.resize(stem.size());
            }
        }
    }

    // Step 5a
    if (ends_with(w, "e")) {
        std::string_view stem(w.data(), w.size() - 1);
        int m = measure(stem);
        if (m > 1 || (m == 1 && !ends_cvc(stem))) w.pop_back();
    }

    // Step 5b
    if (measure(w) > 1 && ends_double_consonant(w) && w.back() == 'l') w.pop_back();

    return w;
}

}  // namespace episent
