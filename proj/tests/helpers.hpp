#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "context_eval/annotations.hpp"
#include "context_eval/month.hpp"
#include "context_eval/types.hpp"

namespace test_helpers {

using namespace context_eval;

// 2016-01-01T00:00:00Z
constexpr std::int64_t kEpoch2016 = 1451606400;

inline std::int64_t ts(int year, int month, int day = 1, int hour = 0) {
    return month_start_epoch(MonthKey{year, month}) + (day - 1) * 86400LL + hour * 3600LL;
}

inline Post make_post(std::string id, std::string author, std::string community,
                      std::int64_t created, std::string domain = "", int score = 1,
                      bool removed = false) {
    Post p;
    p.id = std::move(id);
    p.author = std::move(author);
    p.community = std::move(community);
    p.created = created;
    p.domain = std::move(domain);
    p.score = score;
    p.removed = removed;
    p.title = "t-" + p.id;
    return p;
}

inline SourceAnnotation make_annotation(
    std::string domain, VolkovaCategory volkova,
    MbfcFactualness factualness = MbfcFactualness::Unlabeled,
    MbfcBias bias = MbfcBias::Unlabeled, std::uint8_t flags = 0) {
    SourceAnnotation ann;
    ann.domain = std::move(domain);
    ann.volkova_category = volkova;
    ann.binary_class = binary_class_of(volkova);
    ann.mbfc_factualness = factualness;
    ann.mbfc_bias = bias;
    ann.mbfc_flags = flags;
    return ann;
}

inline AnnotationMap two_source_annotations() {
    AnnotationMap map;
    map["goodnews.com"] = make_annotation("goodnews.com", VolkovaCategory::Verified,
                                          MbfcFactualness::High, MbfcBias::Center);
    map["fakenews.com"] =
        make_annotation("fakenews.com", VolkovaCategory::Hoax, MbfcFactualness::VeryLow,
                        MbfcBias::ExtremeRight, kFlagQuestionable);
    return map;
}

}  // namespace test_helpers
