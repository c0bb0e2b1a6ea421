#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace episent {

// Three-class sentiment. Declaration order is the canonical class order used
// for tie-breaking and for report/export layouts.
enum class SentimentLabel { Positive, Negative, Neutral };

inline constexpr std::array<SentimentLabel, 3> kAllLabels = {
    SentimentLabel::Positive, SentimentLabel::Negative, SentimentLabel::Neutral};

inline std::string_view to_string(SentimentLabel label) {
    switch (label) {
        case SentimentLabel::Positive: return "Positive";
        case SentimentLabel::Negative: return "Negative";
        case SentimentLabel::Neutral: return "Neutral";
    }
    return "Neutral";
}

inline std::optional<SentimentLabel> parse_label(std::string_view text) {
    std::string lower;
    lower.reserve(text.size());
    for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "positive") return SentimentLabel::Positive;
    if (lower == "negative") return SentimentLabel::Negative;
    if (lower == "neutral") return SentimentLabel::Neutral;
    return std::nullopt;
}

inline std::size_t label_index(SentimentLabel label) {
    return static_cast<std::size_t>(label);
}

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace episent
