#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "context_eval/annotations.hpp"
#include "context_eval/types.hpp"

namespace context_eval {

enum class EntityKind { Community, Author };

std::string_view to_string(EntityKind kind);

// Named feature values for one (entity, month) bucket. Keys follow
// `<family>.<label>.<count|frac>` plus the `general.*` activity counters and
// `gini.links_per_contributor` (community buckets with links only).
struct CharacteristicVector {
    std::map<std::string, double> values;

    double get(const std::string& name, double fallback = 0.0) const {
        const auto it = values.find(name);
        return it == values.end() ? fallback : it->second;
    }
    bool has(const std::string& name) const { return values.count(name) != 0; }
};

using EntityMonth = std::pair<std::string, MonthKey>;
using CharacteristicMap = std::map<EntityMonth, CharacteristicVector>;

struct CharacteristicContext {
    const AnnotationMap* annotations = nullptr;
    const DomainList* non_news = nullptr;
};

// The closed list of characteristic names emitted for an entity kind, in
// dump order.
std::vector<std::string> characteristic_names(EntityKind kind);

// Per-(community, month) vectors. Counting is a plain fold over posts; label
// counts come from each link's domain annotation, with unannotated links in
// the `unlabeled` bucket. Fractions divide by the bucket's total links and
// are 0 when the bucket has none.
CharacteristicMap aggregate_community(std::span<const Post> posts,
                                      const CharacteristicContext& ctx);

// Per-(author, month) vectors where month m covers the author's posts in
// months m-window+1..m. A vector is produced for every month whose window is
// non-empty. window_months = 1 gives plain monthly vectors.
CharacteristicMap aggregate_author_rolling(std::span<const Post> posts,
                                           const CharacteristicContext& ctx,
                                           int window_months = 6);

// Population Gini of a non-negative sequence:
//   G = sum_ij |x_i - x_j| / (2 n^2 mean), in [0, 1).
// Throws on empty or all-zero input.
double gini(std::span<const double> values);

struct AcceptanceScore {
    std::string post_id;
    double normalized_score = 0.0;
};

struct AcceptanceResult {
    std::vector<AcceptanceScore> scores;  // input order
    std::size_t excluded_posts = 0;       // posts in groups with median <= 0
    std::size_t excluded_groups = 0;
};

// Post score divided by its (community, month) group's median score; the
// median of an even-sized group is the midpoint of the central pair. Groups
// whose median is <= 0 are excluded as undefined.
AcceptanceResult normalize_scores(std::span<const Post> posts);

// Characteristic dump rows: entity_kind,entity,year,month,characteristic,value
// sorted lexicographically so output is byte-stable.
void write_characteristics_csv(std::ostream& out,
                               std::span<const std::pair<std::string, const CharacteristicMap*>> sections);

struct CharacteristicsBundle {
    CharacteristicMap community;       // monthly
    CharacteristicMap author;          // rolling window
    CharacteristicMap author_monthly;  // window = 1
};

void write_characteristics_csv(std::ostream& out, const CharacteristicsBundle& bundle);
CharacteristicsBundle load_characteristics_csv(std::istream& in);

}  // namespace context_eval
