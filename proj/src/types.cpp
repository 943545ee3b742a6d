#include "context_eval/types.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace context_eval {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string_view to_string(BinaryClass c) {
    switch (c) {
        case BinaryClass::Credible: return "credible";
        case BinaryClass::Deceptive: return "deceptive";
        case BinaryClass::Unlabeled: return "unlabeled";
    }
    return "unlabeled";
}

std::string_view to_string(VolkovaCategory c) {
    switch (c) {
        case VolkovaCategory::Verified: return "verified";
        case VolkovaCategory::Propaganda: return "propaganda";
        case VolkovaCategory::Satire: return "satire";
        case VolkovaCategory::Clickbait: return "clickbait";
        case VolkovaCategory::Conspiracy: return "conspiracy";
        case VolkovaCategory::Hoax: return "hoax";
        case VolkovaCategory::Unlabeled: return "unlabeled";
    }
    return "unlabeled";
}

std::string_view to_string(MbfcFactualness f) {
    switch (f) {
        case MbfcFactualness::VeryLow: return "very_low";
        case MbfcFactualness::Low: return "low";
        case MbfcFactualness::Mixed: return "mixed";
        case MbfcFactualness::Mostly: return "mostly";
        case MbfcFactualness::High: return "high";
        case MbfcFactualness::VeryHigh: return "very_high";
        case MbfcFactualness::Unlabeled: return "unlabeled";
    }
    return "unlabeled";
}

std::string_view to_string(MbfcBias b) {
    switch (b) {
        case MbfcBias::ExtremeLeft: return "extreme_left";
        case MbfcBias::Left: return "left";
        case MbfcBias::CenterLeft: return "center_left";
        case MbfcBias::Center: return "center";
        case MbfcBias::CenterRight: return "center_right";
        case MbfcBias::Right: return "right";
        case MbfcBias::ExtremeRight: return "extreme_right";
        case MbfcBias::Unlabeled: return "unlabeled";
    }
    return "unlabeled";
}

std::optional<BinaryClass> parse_binary_class(std::string_view s) {
    const std::string v = lower(s);
    if (v.empty() || v == "unlabeled") return BinaryClass::Unlabeled;
    if (v == "credible") return BinaryClass::Credible;
    if (v == "deceptive") return BinaryClass::Deceptive;
    return std::nullopt;
}

std::optional<VolkovaCategory> parse_volkova_category(std::string_view s) {
    const std::string v = lower(s);
    if (v.empty() || v == "unlabeled") return VolkovaCategory::Unlabeled;
    if (v == "verified") return VolkovaCategory::Verified;
    if (v == "propaganda") return VolkovaCategory::Propaganda;
    if (v == "satire") return VolkovaCategory::Satire;
    if (v == "clickbait") return VolkovaCategory::Clickbait;
    if (v == "conspiracy") return VolkovaCategory::Conspiracy;
    if (v == "hoax") return VolkovaCategory::Hoax;
    return std::nullopt;
}

std::optional<MbfcFactualness> parse_mbfc_factualness(std::string_view s) {
    const std::string v = lower(s);
    if (v.empty() || v == "unlabeled") return MbfcFactualness::Unlabeled;
    if (v == "very_low") return MbfcFactualness::VeryLow;
    if (v == "low") return MbfcFactualness::Low;
    if (v == "mixed") return MbfcFactualness::Mixed;
    if (v == "mostly") return MbfcFactualness::Mostly;
    if (v == "high") return MbfcFactualness::High;
    if (v == "very_high") return MbfcFactualness::VeryHigh;
    return std::nullopt;
}

std::optional<MbfcBias> parse_mbfc_bias(std::string_view s) {
    const std::string v = lower(s);
    if (v.empty() || v == "unlabeled") return MbfcBias::Unlabeled;
    if (v == "extreme_left") return MbfcBias::ExtremeLeft;
    if (v == "left") return MbfcBias::Left;
    if (v == "center_left") return MbfcBias::CenterLeft;
    if (v == "center") return MbfcBias::Center;
    if (v == "center_right") return MbfcBias::CenterRight;
    if (v == "right") return MbfcBias::Right;
    if (v == "extreme_right") return MbfcBias::ExtremeRight;
    return std::nullopt;
}

std::optional<std::uint8_t> parse_mbfc_flags(std::string_view semicolon_separated) {
    std::uint8_t flags = 0;
    std::string_view rest = semicolon_separated;
    while (!rest.empty()) {
        const auto pos = rest.find(';');
        const std::string part = lower(rest.substr(0, pos));
        rest = pos == std::string_view::npos ? std::string_view{} : rest.substr(pos + 1);
        if (part.empty()) continue;
        if (part == "questionable") flags |= kFlagQuestionable;
        else if (part == "satire") flags |= kFlagSatire;
        else if (part == "conspiracy") flags |= kFlagConspiracy;
        else if (part == "retired") flags |= kFlagRetired;
        else return std::nullopt;
    }
    return flags;
}

std::string mbfc_flags_to_string(std::uint8_t flags) {
    static constexpr std::array<std::pair<MbfcFlag, std::string_view>, 4> kNames = {{
        {kFlagQuestionable, "questionable"},
        {kFlagSatire, "satire"},
        {kFlagConspiracy, "conspiracy"},
        {kFlagRetired, "retired"},
    }};
    std::string out;
    for (const auto& [flag, name] : kNames) {
        if ((flags & flag) == 0) continue;
        if (!out.empty()) out += ';';
        out += name;
    }
    return out;
}

bool SourceAnnotation::has_any_label() const {
    return binary_class != BinaryClass::Unlabeled ||
           volkova_category != VolkovaCategory::Unlabeled ||
           mbfc_factualness != MbfcFactualness::Unlabeled ||
           mbfc_bias != MbfcBias::Unlabeled || mbfc_flags != 0;
}

}  // namespace context_eval
