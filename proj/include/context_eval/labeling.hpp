#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "context_eval/annotations.hpp"
#include "context_eval/types.hpp"

namespace context_eval {

struct LabelStats {
    std::size_t labeled = 0;
    std::size_t dropped = 0;
};

// Propagates each source's binary class to the posts linking to it. Posts
// whose domain has no (or an unlabeled) annotation are dropped and counted.
std::vector<LabeledPost> label_posts(std::span<const Post> posts,
                                     const AnnotationMap& annotations,
                                     LabelStats* stats = nullptr);

struct DatasetSplit {
    std::vector<LabeledPost> train;
    std::vector<LabeledPost> test;
};

// Seeded class rebalance + stratified split. The majority class is
// down-sampled uniformly at random to the minority size, then each class is
// split with round(test_fraction * n) posts held out. Deterministic for a
// fixed seed; throws if only one class is present.
DatasetSplit build_dataset(std::span<const LabeledPost> labeled, std::uint64_t seed,
                           double test_fraction);

// Per-month fraction of potential news links (non-empty domain, not in the
// non-news list) whose domain the annotation table labels. Months with zero
// potential news links are omitted.
std::map<MonthKey, double> measure_coverage(std::span<const Post> posts,
                                            const AnnotationMap& annotations,
                                            const DomainList& non_news);

}  // namespace context_eval
