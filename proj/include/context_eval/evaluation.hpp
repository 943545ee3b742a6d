#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "context_eval/characteristics.hpp"
#include "context_eval/stats.hpp"
#include "context_eval/types.hpp"

namespace context_eval {

// Deceptive is the positive class throughout.
struct MetricBundle {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double macro_f1 = 0.0;
    std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;

    std::int64_t support_deceptive() const { return tp + fn; }
    std::int64_t support_credible() const { return tn + fp; }
};

MetricBundle metrics_from_counts(std::int64_t tp, std::int64_t fp, std::int64_t fn,
                                 std::int64_t tn);

// Aligned by index; throws if any post_id disagrees.
MetricBundle metrics(std::span<const LabeledPost> truths,
                     std::span<const PredictionRecord> predictions);

struct GroupReport {
    std::string key;
    MetricBundle metrics;
    std::int64_t n_posts = 0;
    int quartile = 1;  // 1 = lowest F1 block
};

// One report per group with >= min_group_size posts; quartiles assigned by
// F1 rank (ties broken by key) into four contiguous blocks of near-equal size.
std::vector<GroupReport> group_metrics(std::span<const LabeledPost> test,
                                       std::span<const PredictionRecord> predictions,
                                       EntityKind key, int min_group_size = 1);

enum class Subset { All, Credible, Deceptive };

std::string_view to_string(Subset subset);

struct CorrelationEntry {
    std::string characteristic;
    Subset subset = Subset::All;
    double r = 0.0;
    double p = 1.0;
    int n = 0;
    bool defined = false;
    bool included = false;  // max |r| across subsets >= threshold
};

// Pearson correlation of each characteristic value (community vector and
// author rolling vector at the post's month, plus the raw post score)
// against true-class confidence, over all/credible/deceptive posts.
std::vector<CorrelationEntry> correlate_confidence(
    std::span<const LabeledPost> test, std::span<const PredictionRecord> predictions,
    const CharacteristicMap& community_monthly, const CharacteristicMap& author_rolling,
    double r_threshold = 0.25, int threads = 1);

struct GroupCorrelationEntry {
    EntityKind kind = EntityKind::Community;
    std::string characteristic;
    std::string metric;  // f1 | precision | recall
    double r = 0.0;
    double p = 1.0;
    int n = 0;
    bool defined = false;
    bool included = false;
};

// Correlates group-level characteristics (monthly vectors averaged over the
// group's months, weighted by monthly link count, plus test.deceptive.frac)
// against per-group F1/precision/recall. Requires >= 3 groups.
std::vector<GroupCorrelationEntry> correlate_group_metrics(
    std::span<const GroupReport> groups, const CharacteristicMap& monthly_vectors,
    EntityKind kind, std::span<const LabeledPost> test, double r_threshold = 0.3);

struct DecileCorrelationEntry {
    int decile = 1;  // 1 = least accepted
    Subset subset = Subset::All;
    double r = 0.0;
    double p = 1.0;
    int n = 0;
    bool defined = false;
};

// Ranks test posts by normalized score (ties by post id), cuts them into 10
// equal-count deciles, and correlates score vs true-class confidence within
// each decile x subset. Posts without a usable normalized score are skipped.
// per_community ranks within each community before pooling per decile.
std::vector<DecileCorrelationEntry> acceptance_decile_analysis(
    std::span<const LabeledPost> test, std::span<const PredictionRecord> predictions,
    std::span<const AcceptanceScore> scores, bool per_community = false);

// Rank positions 0..n-1 -> block 1..n_blocks with sizes differing by <= 1.
inline int rank_block(std::size_t rank, std::size_t n, int n_blocks) {
    return static_cast<int>(rank * static_cast<std::size_t>(n_blocks) / n) + 1;
}

}  // namespace context_eval
