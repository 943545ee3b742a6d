#include "context_eval/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace context_eval {

namespace {

double safe_f1(double precision, double recall) {
    const double denom = precision + recall;
    return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

struct JoinedPost {
    const LabeledPost* post;
    const PredictionRecord* pred;
    double confidence;  // true-class confidence
};

std::vector<JoinedPost> join(std::span<const LabeledPost> truths,
                             std::span<const PredictionRecord> predictions) {
    if (truths.size() != predictions.size())
        throw std::invalid_argument("test set and predictions differ in length");
    std::vector<JoinedPost> joined;
    joined.reserve(truths.size());
    for (std::size_t i = 0; i < truths.size(); ++i) {
        if (truths[i].post.id != predictions[i].post_id)
            throw std::invalid_argument("post id mismatch at row " + std::to_string(i) +
                                        ": " + truths[i].post.id + " vs " +
                                        predictions[i].post_id);
        joined.push_back({&truths[i], &predictions[i],
                          true_class_confidence(truths[i].true_class,
                                                predictions[i].p_deceptive)});
    }
    return joined;
}

PearsonResult pearson_or_undefined(const std::vector<double>& x,
                                   const std::vector<double>& y, bool& defined) {
    try {
        defined = true;
        return pearson(x, y);
    } catch (const std::invalid_argument&) {
        defined = false;
        return PearsonResult{0.0, 1.0, static_cast<int>(x.size())};
    }
}

}  // namespace

std::string_view to_string(Subset subset) {
    switch (subset) {
        case Subset::All: return "all";
        case Subset::Credible: return "credible";
        case Subset::Deceptive: return "deceptive";
    }
    return "all";
}

MetricBundle metrics_from_counts(std::int64_t tp, std::int64_t fp, std::int64_t fn,
                                 std::int64_t tn) {
    MetricBundle m;
    m.tp = tp;
    m.fp = fp;
    m.fn = fn;
    m.tn = tn;
    m.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    m.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    m.f1 = safe_f1(m.precision, m.recall);
    // Macro F1: unweighted mean of per-class F1, Credible as its own positive.
    const double precision_c =
        tn + fn > 0 ? static_cast<double>(tn) / static_cast<double>(tn + fn) : 0.0;
    const double recall_c =
        tn + fp > 0 ? static_cast<double>(tn) / static_cast<double>(tn + fp) : 0.0;
    m.macro_f1 = 0.5 * (m.f1 + safe_f1(precision_c, recall_c));
    return m;
}

MetricBundle metrics(std::span<const LabeledPost> truths,
                     std::span<const PredictionRecord> predictions) {
    if (truths.empty()) throw std::invalid_argument("metrics: empty input");
    const auto joined = join(truths, predictions);
    std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (const auto& j : joined) {
        const bool truth = j.post->true_class == BinaryClass::Deceptive;
        const bool pred = j.pred->predicted_class == BinaryClass::Deceptive;
        if (truth && pred) ++tp;
        else if (!truth && pred) ++fp;
        else if (truth && !pred) ++fn;
        else ++tn;
    }
    return metrics_from_counts(tp, fp, fn, tn);
}

std::vector<GroupReport> group_metrics(std::span<const LabeledPost> test,
                                       std::span<const PredictionRecord> predictions,
                                       EntityKind key, int min_group_size) {
    const auto joined = join(test, predictions);
    struct Counts {
        std::int64_t tp = 0, fp = 0, fn = 0, tn = 0, n = 0;
    };
    std::map<std::string, Counts> by_group;
    for (const auto& j : joined) {
        const std::string& group =
            key == EntityKind::Community ? j.post->post.community : j.post->post.author;
        Counts& c = by_group[group];
        ++c.n;
        const bool truth = j.post->true_class == BinaryClass::Deceptive;
        const bool pred = j.pred->predicted_class == BinaryClass::Deceptive;
        if (truth && pred) ++c.tp;
        else if (!truth && pred) ++c.fp;
        else if (truth && !pred) ++c.fn;
        else ++c.tn;
    }

    std::vector<GroupReport> reports;
    for (const auto& [group, c] : by_group) {
        if (c.n < min_group_size) continue;
        GroupReport r;
        r.key = group;
        r.metrics = metrics_from_counts(c.tp, c.fp, c.fn, c.tn);
        r.n_posts = c.n;
        reports.push_back(std::move(r));
    }

    // Quartile = rank block over ascending F1, tie-broken by key.
    std::vector<std::size_t> order(reports.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&reports](std::size_t a, std::size_t b) {
        if (reports[a].metrics.f1 != reports[b].metrics.f1)
            return reports[a].metrics.f1 < reports[b].metrics.f1;
        return reports[a].key < reports[b].key;
    });
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        reports[order[rank]].quartile = rank_block(rank, order.size(), 4);
    }
    return reports;
}

std::vector<CorrelationEntry> correlate_confidence(
    std::span<const LabeledPost> test, std::span<const PredictionRecord> predictions,
    const CharacteristicMap& community_monthly, const CharacteristicMap& author_rolling,
    double r_threshold, int threads) {
    const auto joined = join(test, predictions);

    // One named series per characteristic; missing lookups skip the post.
    struct Series {
        std::string name;
        std::vector<double> x;
        std::vector<double> y;
        std::vector<BinaryClass> truth;
    };
    std::vector<Series> series;
    const auto add_entity = [&](std::string_view prefix, EntityKind kind,
                                const CharacteristicMap& map, auto key_of) {
        // resolve each post's vector once, then sweep characteristics
        std::vector<const CharacteristicVector*> vectors;
        vectors.reserve(joined.size());
        for (const auto& j : joined) {
            const auto it = map.find({key_of(*j.post), j.post->post.month()});
            vectors.push_back(it == map.end() ? nullptr : &it->second);
        }
        for (const auto& name : characteristic_names(kind)) {
            Series s;
            s.name = std::string(prefix) + ":" + name;
            for (std::size_t i = 0; i < joined.size(); ++i) {
                const CharacteristicVector* vec = vectors[i];
                if (!vec) continue;
                const auto value_it = vec->values.find(name);
                if (value_it == vec->values.end()) continue;
                s.x.push_back(value_it->second);
                s.y.push_back(joined[i].confidence);
                s.truth.push_back(joined[i].post->true_class);
            }
            series.push_back(std::move(s));
        }
    };
    add_entity("community", EntityKind::Community, community_monthly,
               [](const LabeledPost& p) { return p.post.community; });
    add_entity("author", EntityKind::Author, author_rolling,
               [](const LabeledPost& p) { return p.post.author; });
    {
        Series s;
        s.name = "post:score";
        for (const auto& j : joined) {
            s.x.push_back(j.post->post.score);
            s.y.push_back(j.confidence);
            s.truth.push_back(j.post->true_class);
        }
        series.push_back(std::move(s));
    }

    std::vector<CorrelationEntry> entries(series.size() * 3);
    const auto run_range = [&](std::size_t begin, std::size_t end) {
        std::vector<double> x, y;
        for (std::size_t si = begin; si < end; ++si) {
            const Series& s = series[si];
            double max_abs_r = 0.0;
            bool any_defined = false;
            for (int sub = 0; sub < 3; ++sub) {
                const auto subset = static_cast<Subset>(sub);
                x.clear();
                y.clear();
                for (std::size_t i = 0; i < s.x.size(); ++i) {
                    if (subset == Subset::Credible && s.truth[i] != BinaryClass::Credible)
                        continue;
                    if (subset == Subset::Deceptive && s.truth[i] != BinaryClass::Deceptive)
                        continue;
                    x.push_back(s.x[i]);
                    y.push_back(s.y[i]);
                }
                CorrelationEntry& e = entries[si * 3 + sub];
                e.characteristic = s.name;
                e.subset = subset;
                const PearsonResult res = pearson_or_undefined(x, y, e.defined);
                e.r = res.r;
                e.p = res.p;
                e.n = static_cast<int>(x.size());
                if (e.defined) {
                    any_defined = true;
                    max_abs_r = std::max(max_abs_r, std::abs(e.r));
                }
            }
            const bool included = any_defined && max_abs_r >= r_threshold;
            for (int sub = 0; sub < 3; ++sub) entries[si * 3 + sub].included = included;
        }
    };

    const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(series.size())));
    if (n_threads == 1) {
        run_range(0, series.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (series.size() + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(series.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return entries;
}

std::vector<GroupCorrelationEntry> correlate_group_metrics(
    std::span<const GroupReport> groups, const CharacteristicMap& monthly_vectors,
    EntityKind kind, std::span<const LabeledPost> test, double r_threshold) {
    if (groups.size() < 3)
        throw std::invalid_argument("correlate_group_metrics: need at least 3 groups");

    // Link-count-weighted mean of each characteristic over the group's months.
    std::unordered_map<std::string, std::unordered_map<std::string, std::pair<double, double>>>
        accum;  // group -> name -> (weighted sum, weight)
    for (const auto& [key, vec] : monthly_vectors) {
        const auto& [entity, month] = key;
        const double weight = vec.get("general.links");
        if (weight <= 0.0) continue;
        auto& per_name = accum[entity];
        for (const auto& [name, value] : vec.values) {
            auto& [wsum, w] = per_name[name];
            wsum += weight * value;
            w += weight;
        }
    }

    // Fraction of the group's test posts that are deceptive.
    std::unordered_map<std::string, std::pair<std::int64_t, std::int64_t>> test_mix;
    for (const LabeledPost& lp : test) {
        const std::string& group =
            kind == EntityKind::Community ? lp.post.community : lp.post.author;
        auto& [deceptive, total] = test_mix[group];
        ++total;
        if (lp.true_class == BinaryClass::Deceptive) ++deceptive;
    }

    std::vector<std::string> names = characteristic_names(kind);
    names.push_back("test.deceptive.frac");

    static constexpr std::array<std::string_view, 3> kMetrics = {"f1", "precision",
                                                                 "recall"};
    std::vector<GroupCorrelationEntry> entries;
    for (const auto& name : names) {
        std::vector<double> x;
        std::array<std::vector<double>, 3> ys;
        for (const GroupReport& g : groups) {
            double value = 0.0;
            if (name == "test.deceptive.frac") {
                const auto it = test_mix.find(g.key);
                if (it == test_mix.end() || it->second.second == 0) continue;
                value = static_cast<double>(it->second.first) /
                        static_cast<double>(it->second.second);
            } else {
                const auto git = accum.find(g.key);
                if (git == accum.end()) continue;
                const auto nit = git->second.find(name);
                if (nit == git->second.end() || nit->second.second <= 0.0) continue;
                value = nit->second.first / nit->second.second;
            }
            x.push_back(value);
            ys[0].push_back(g.metrics.f1);
            ys[1].push_back(g.metrics.precision);
            ys[2].push_back(g.metrics.recall);
        }
        double max_abs_r = 0.0;
        bool any_defined = false;
        const std::size_t first = entries.size();
        for (std::size_t mi = 0; mi < kMetrics.size(); ++mi) {
            GroupCorrelationEntry e;
            e.kind = kind;
            e.characteristic = name;
            e.metric = std::string(kMetrics[mi]);
            const PearsonResult res = pearson_or_undefined(x, ys[mi], e.defined);
            e.r = res.r;
            e.p = res.p;
            e.n = static_cast<int>(x.size());
            if (e.defined) {
                any_defined = true;
                max_abs_r = std::max(max_abs_r, std::abs(e.r));
            }
            entries.push_back(std::move(e));
        }
        const bool included = any_defined && max_abs_r >= r_threshold;
        for (std::size_t i = first; i < entries.size(); ++i) entries[i].included = included;
    }
    return entries;
}

std::vector<DecileCorrelationEntry> acceptance_decile_analysis(
    std::span<const LabeledPost> test, std::span<const PredictionRecord> predictions,
    std::span<const AcceptanceScore> scores, bool per_community) {
    const auto joined = join(test, predictions);
    std::unordered_map<std::string, double> score_by_id;
    score_by_id.reserve(scores.size());
    for (const auto& s : scores) score_by_id[s.post_id] = s.normalized_score;

    struct Item {
        double score;
        double confidence;
        BinaryClass truth;
        const std::string* id;
        const std::string* community;
        int decile = 0;
    };
    std::vector<Item> items;
    for (const auto& j : joined) {
        const auto it = score_by_id.find(j.post->post.id);
        if (it == score_by_id.end()) continue;  // undefined normalized score
        items.push_back({it->second, j.confidence, j.post->true_class, &j.post->post.id,
                         &j.post->post.community});
    }

    const auto rank_and_assign = [](std::vector<Item*>& block) {
        std::sort(block.begin(), block.end(), [](const Item* a, const Item* b) {
            if (a->score != b->score) return a->score < b->score;
            return *a->id < *b->id;
        });
        for (std::size_t rank = 0; rank < block.size(); ++rank)
            block[rank]->decile = rank_block(rank, block.size(), 10);
    };

    if (per_community) {
        std::map<std::string, std::vector<Item*>> by_community;
        for (Item& item : items) by_community[*item.community].push_back(&item);
        for (auto& [_, block] : by_community) rank_and_assign(block);
    } else {
        std::vector<Item*> all;
        all.reserve(items.size());
        for (Item& item : items) all.push_back(&item);
        rank_and_assign(all);
    }

    std::vector<DecileCorrelationEntry> entries;
    for (int decile = 1; decile <= 10; ++decile) {
        for (int sub = 0; sub < 3; ++sub) {
            const auto subset = static_cast<Subset>(sub);
            std::vector<double> x, y;
            for (const Item& item : items) {
                if (item.decile != decile) continue;
                if (subset == Subset::Credible && item.truth != BinaryClass::Credible)
                    continue;
                if (subset == Subset::Deceptive && item.truth != BinaryClass::Deceptive)
                    continue;
                x.push_back(item.score);
                y.push_back(item.confidence);
            }
            DecileCorrelationEntry e;
            e.decile = decile;
            e.subset = subset;
            const PearsonResult res = pearson_or_undefined(x, y, e.defined);
            e.r = res.r;
            e.p = res.p;
            e.n = static_cast<int>(x.size());
            entries.push_back(std::move(e));
        }
    }
    return entries;
}

}  // namespace context_eval
