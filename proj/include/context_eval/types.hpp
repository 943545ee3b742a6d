#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>

#include "context_eval/month.hpp"

namespace context_eval {

enum class BinaryClass : std::uint8_t { Credible, Deceptive, Unlabeled };

enum class VolkovaCategory : std::uint8_t {
    Verified,
    Propaganda,
    Satire,
    Clickbait,
    Conspiracy,
    Hoax,
    Unlabeled,
};

// Ordinal, low to high.
enum class MbfcFactualness : std::uint8_t {
    VeryLow,
    Low,
    Mixed,
    Mostly,
    High,
    VeryHigh,
    Unlabeled,
};

// Ordinal, left to right.
enum class MbfcBias : std::uint8_t {
    ExtremeLeft,
    Left,
    CenterLeft,
    Center,
    CenterRight,
    Right,
    ExtremeRight,
    Unlabeled,
};

// Non-exclusive source flags, kept as a bitmask.
enum MbfcFlag : std::uint8_t {
    kFlagQuestionable = 1u << 0,
    kFlagSatire = 1u << 1,
    kFlagConspiracy = 1u << 2,
    kFlagRetired = 1u << 3,
};

std::string_view to_string(BinaryClass c);
std::string_view to_string(VolkovaCategory c);
std::string_view to_string(MbfcFactualness f);
std::string_view to_string(MbfcBias b);

std::optional<BinaryClass> parse_binary_class(std::string_view s);
std::optional<VolkovaCategory> parse_volkova_category(std::string_view s);
std::optional<MbfcFactualness> parse_mbfc_factualness(std::string_view s);
std::optional<MbfcBias> parse_mbfc_bias(std::string_view s);
std::optional<std::uint8_t> parse_mbfc_flags(std::string_view semicolon_separated);
std::string mbfc_flags_to_string(std::uint8_t flags);

// One link submission. `domain` is the lowercased registrable domain of the
// linked URL ("" for selfposts); `score` is upvotes minus downvotes.
struct Post {
    std::string id;
    std::string author;
    std::string community;  // subreddit, lowercased
    std::int64_t created = 0;
    std::string domain;
    int score = 0;
    bool removed = false;
    std::string title;

    MonthKey month() const { return MonthKey::from_timestamp(created); }
};

// Per-domain labels pulled from the annotation table.
struct SourceAnnotation {
    std::string domain;
    BinaryClass binary_class = BinaryClass::Unlabeled;
    VolkovaCategory volkova_category = VolkovaCategory::Unlabeled;
    MbfcFactualness mbfc_factualness = MbfcFactualness::Unlabeled;
    MbfcBias mbfc_bias = MbfcBias::Unlabeled;
    std::uint8_t mbfc_flags = 0;

    bool has_flag(MbfcFlag f) const { return (mbfc_flags & f) != 0; }
    // True when the row labels the domain in any way (used for coverage).
    bool has_any_label() const;
};

struct LabeledPost {
    Post post;
    BinaryClass true_class = BinaryClass::Unlabeled;
    SourceAnnotation annotation;
};

struct PredictionRecord {
    std::string post_id;
    double p_deceptive = 0.0;
    BinaryClass predicted_class = BinaryClass::Credible;
};

inline BinaryClass predicted_class_for(double p_deceptive, double threshold = 0.5) {
    return p_deceptive >= threshold ? BinaryClass::Deceptive : BinaryClass::Credible;
}

// The model's probability for the post's ground-truth class.
inline double true_class_confidence(BinaryClass truth, double p_deceptive) {
    return truth == BinaryClass::Deceptive ? p_deceptive : 1.0 - p_deceptive;
}

struct DomainList {
    std::unordered_set<std::string> entries;

    bool contains(std::string_view domain) const {
        return entries.find(std::string(domain)) != entries.end();
    }
};

}  // namespace context_eval
