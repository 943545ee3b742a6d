#include "context_eval/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "context_eval/rng.hpp"

namespace context_eval {

std::vector<LabeledPost> label_posts(std::span<const Post> posts,
                                     const AnnotationMap& annotations,
                                     LabelStats* stats) {
    LabelStats local;
    std::vector<LabeledPost> out;
    for (const Post& p : posts) {
        const auto it = p.domain.empty() ? annotations.end() : annotations.find(p.domain);
        if (it == annotations.end() || it->second.binary_class == BinaryClass::Unlabeled) {
            ++local.dropped;
            continue;
        }
        out.push_back(LabeledPost{p, it->second.binary_class, it->second});
        ++local.labeled;
    }
    if (stats) *stats = local;
    return out;
}

namespace {

void shuffle_deterministic(std::vector<const LabeledPost*>& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(v[i - 1], v[j]);
    }
}

void sort_by_id(std::vector<LabeledPost>& v) {
    std::sort(v.begin(), v.end(), [](const LabeledPost& a, const LabeledPost& b) {
        return a.post.id < b.post.id;
    });
}

}  // namespace

DatasetSplit build_dataset(std::span<const LabeledPost> labeled, std::uint64_t seed,
                           double test_fraction) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("test_fraction must be in (0, 1)");

    std::vector<const LabeledPost*> credible, deceptive;
    for (const LabeledPost& lp : labeled) {
        (lp.true_class == BinaryClass::Credible ? credible : deceptive).push_back(&lp);
    }
    if (credible.empty() || deceptive.empty())
        throw std::invalid_argument("cannot stratify single-class data");

    // Stable starting order regardless of input permutation.
    const auto by_id = [](const LabeledPost* a, const LabeledPost* b) {
        return a->post.id < b->post.id;
    };
    std::sort(credible.begin(), credible.end(), by_id);
    std::sort(deceptive.begin(), deceptive.end(), by_id);

    const std::size_t keep = std::min(credible.size(), deceptive.size());
    const std::size_t test_n =
        static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(keep)));

    DatasetSplit split;
    SplitMix64 rng(splitmix64_next(seed));
    for (auto* pool : {&credible, &deceptive}) {
        shuffle_deterministic(*pool, rng);
        for (std::size_t i = 0; i < keep; ++i) {
            auto& dst = i < test_n ? split.test : split.train;
            dst.push_back(*(*pool)[i]);
        }
    }
    sort_by_id(split.train);
    sort_by_id(split.test);
    return split;
}

std::map<MonthKey, double> measure_coverage(std::span<const Post> posts,
                                            const AnnotationMap& annotations,
                                            const DomainList& non_news) {
    struct Tally {
        std::int64_t potential = 0;
        std::int64_t labeled = 0;
    };
    std::map<MonthKey, Tally> tallies;
    for (const Post& p : posts) {
        if (p.domain.empty() || non_news.contains(p.domain)) continue;
        Tally& t = tallies[p.month()];
        ++t.potential;
        const auto it = annotations.find(p.domain);
        if (it != annotations.end() && it->second.has_any_label()) ++t.labeled;
    }
    std::map<MonthKey, double> coverage;
    for (const auto& [month, t] : tallies) {
        if (t.potential > 0)
            coverage[month] =
                static_cast<double>(t.labeled) / static_cast<double>(t.potential);
    }
    return coverage;
}

}  // namespace context_eval
