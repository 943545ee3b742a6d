#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "context_eval/characteristics.hpp"
#include "context_eval/types.hpp"

namespace context_eval {

enum class BaselineKind { AuthorHistory, CommunityHistory, FiftyFifty };

std::string_view to_string(BaselineKind kind);

struct BaselinePrediction {
    std::string post_id;
    BaselineKind baseline = BaselineKind::FiftyFifty;
    double p_deceptive = 0.5;
    BinaryClass sampled_class = BinaryClass::Credible;
};

// Biased coin flip with p = the author's deceptive fraction of labeled news
// links over the rolling window ending at the post's month; 0.5 when the
// window has no labeled links. The draw comes from a per-post stream derived
// from (seed, post_id), so results do not depend on evaluation order.
BaselinePrediction author_history_baseline(const LabeledPost& post,
                                           const CharacteristicVector* author_vector,
                                           std::uint64_t seed);

// Same, with the post's (community, month) vector as evidence.
BaselinePrediction community_history_baseline(const LabeledPost& post,
                                              const CharacteristicVector* community_vector,
                                              std::uint64_t seed);

BaselinePrediction fifty_fifty_baseline(const LabeledPost& post, std::uint64_t seed);

// Runs all three baselines over a test set, looking up vectors by
// (entity, post month). Output ordered by (post id, baseline).
std::vector<BaselinePrediction> run_baselines(std::span<const LabeledPost> test,
                                              const CharacteristicMap& author_rolling,
                                              const CharacteristicMap& community_monthly,
                                              std::uint64_t seed);

// CSV: post_id,baseline,p_deceptive,sampled_class
void write_baselines_csv(std::span<const BaselinePrediction> predictions,
                         std::ostream& out);
std::vector<BaselinePrediction> load_baselines_csv(std::istream& in);

}  // namespace context_eval
