#include "context_eval/characteristics.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "context_eval/csv.hpp"

namespace context_eval {

namespace {

constexpr int kBinaryN = 3;
constexpr int kVolkovaN = 7;
constexpr int kFactualnessN = 7;
constexpr int kBiasN = 8;
constexpr int kFlagsN = 4;

constexpr std::array<std::string_view, kBinaryN> kBinaryLabels = {
    "credible", "deceptive", "unlabeled"};
constexpr std::array<std::string_view, kVolkovaN> kVolkovaLabels = {
    "verified", "propaganda", "satire", "clickbait", "conspiracy", "hoax", "unlabeled"};
constexpr std::array<std::string_view, kFactualnessN> kFactualnessLabels = {
    "very_low", "low", "mixed", "mostly", "high", "very_high", "unlabeled"};
constexpr std::array<std::string_view, kBiasN> kBiasLabels = {
    "extreme_left", "left",  "center_left",   "center",
    "center_right", "right", "extreme_right", "unlabeled"};
constexpr std::array<std::string_view, kFlagsN> kFlagLabels = {
    "questionable", "satire", "conspiracy", "retired"};

// Integer accumulator for one (entity, month) bucket. Addition/subtraction
// exact, so sliding-window sums match from-scratch recounts bit for bit.
struct BucketCounts {
    std::int64_t posts = 0;
    std::int64_t linkposts = 0;
    std::int64_t removed = 0;
    std::int64_t links = 0;
    std::int64_t potential_news_links = 0;
    std::array<std::int64_t, kBinaryN> binary{};
    std::array<std::int64_t, kVolkovaN> volkova{};
    std::array<std::int64_t, kFactualnessN> factualness{};
    std::array<std::int64_t, kBiasN> bias{};
    std::array<std::int64_t, kFlagsN> flags{};
    std::unordered_map<std::string, std::int64_t> links_per_contributor;

    void add_post(const Post& p, const CharacteristicContext& ctx, bool track_contributors) {
        ++posts;
        if (p.removed) ++removed;
        if (p.domain.empty()) return;
        ++linkposts;
        ++links;
        if (!ctx.non_news || !ctx.non_news->contains(p.domain)) ++potential_news_links;
        const SourceAnnotation* ann = nullptr;
        if (ctx.annotations) {
            const auto it = ctx.annotations->find(p.domain);
            if (it != ctx.annotations->end()) ann = &it->second;
        }
        binary[static_cast<int>(ann ? ann->binary_class : BinaryClass::Unlabeled)]++;
        volkova[static_cast<int>(ann ? ann->volkova_category : VolkovaCategory::Unlabeled)]++;
        factualness[static_cast<int>(ann ? ann->mbfc_factualness : MbfcFactualness::Unlabeled)]++;
        bias[static_cast<int>(ann ? ann->mbfc_bias : MbfcBias::Unlabeled)]++;
        if (ann) {
            for (int f = 0; f < kFlagsN; ++f) {
                if (ann->mbfc_flags & (1u << f)) flags[f]++;
            }
        }
        if (track_contributors) links_per_contributor[p.author]++;
    }

    void add(const BucketCounts& o) {
        posts += o.posts;
        linkposts += o.linkposts;
        removed += o.removed;
        links += o.links;
        potential_news_links += o.potential_news_links;
        for (int i = 0; i < kBinaryN; ++i) binary[i] += o.binary[i];
        for (int i = 0; i < kVolkovaN; ++i) volkova[i] += o.volkova[i];
        for (int i = 0; i < kFactualnessN; ++i) factualness[i] += o.factualness[i];
        for (int i = 0; i < kBiasN; ++i) bias[i] += o.bias[i];
        for (int i = 0; i < kFlagsN; ++i) flags[i] += o.flags[i];
    }

    void subtract(const BucketCounts& o) {
        posts -= o.posts;
        linkposts -= o.linkposts;
        removed -= o.removed;
        links -= o.links;
        potential_news_links -= o.potential_news_links;
        for (int i = 0; i < kBinaryN; ++i) binary[i] -= o.binary[i];
        for (int i = 0; i < kVolkovaN; ++i) volkova[i] -= o.volkova[i];
        for (int i = 0; i < kFactualnessN; ++i) factualness[i] -= o.factualness[i];
        for (int i = 0; i < kBiasN; ++i) bias[i] -= o.bias[i];
        for (int i = 0; i < kFlagsN; ++i) flags[i] -= o.flags[i];
    }
};

template <std::size_t N>
void emit_family(CharacteristicVector& vec, std::string_view family,
                 const std::array<std::string_view, N>& labels,
                 const std::array<std::int64_t, N>& counts, std::int64_t denom) {
    for (std::size_t i = 0; i < N; ++i) {
        std::string base = std::string(family) + "." + std::string(labels[i]);
        vec.values[base + ".count"] = static_cast<double>(counts[i]);
        vec.values[base + ".frac"] =
            denom > 0 ? static_cast<double>(counts[i]) / static_cast<double>(denom) : 0.0;
    }
}

CharacteristicVector finalize(const BucketCounts& b, bool community) {
    CharacteristicVector vec;
    vec.values["general.posts"] = static_cast<double>(b.posts);
    vec.values["general.linkposts"] = static_cast<double>(b.linkposts);
    vec.values["general.removed"] = static_cast<double>(b.removed);
    vec.values["general.links"] = static_cast<double>(b.links);
    vec.values["general.potential_news_links"] = static_cast<double>(b.potential_news_links);
    emit_family(vec, "binary", kBinaryLabels, b.binary, b.links);
    emit_family(vec, "volkova", kVolkovaLabels, b.volkova, b.links);
    emit_family(vec, "mbfc_factualness", kFactualnessLabels, b.factualness, b.links);
    emit_family(vec, "mbfc_bias", kBiasLabels, b.bias, b.links);
    emit_family(vec, "mbfc_flags", kFlagLabels, b.flags, b.links);
    if (community && b.links > 0) {
        std::vector<double> per_contributor;
        per_contributor.reserve(b.links_per_contributor.size());
        for (const auto& [author, n] : b.links_per_contributor)
            per_contributor.push_back(static_cast<double>(n));
        vec.values["gini.links_per_contributor"] = gini(per_contributor);
    }
    return vec;
}

}  // namespace

std::string_view to_string(EntityKind kind) {
    return kind == EntityKind::Community ? "community" : "author";
}

std::vector<std::string> characteristic_names(EntityKind kind) {
    BucketCounts empty;
    CharacteristicVector probe = finalize(empty, false);
    std::vector<std::string> names;
    names.reserve(probe.values.size() + 1);
    for (const auto& [name, _] : probe.values) names.push_back(name);
    if (kind == EntityKind::Community) names.push_back("gini.links_per_contributor");
    std::sort(names.begin(), names.end());
    return names;
}

CharacteristicMap aggregate_community(std::span<const Post> posts,
                                      const CharacteristicContext& ctx) {
    std::map<EntityMonth, BucketCounts> buckets;
    for (const Post& p : posts) {
        buckets[{p.community, p.month()}].add_post(p, ctx, /*track_contributors=*/true);
    }
    CharacteristicMap out;
    for (const auto& [key, counts] : buckets) out[key] = finalize(counts, true);
    return out;
}

CharacteristicMap aggregate_author_rolling(std::span<const Post> posts,
                                           const CharacteristicContext& ctx,
                                           int window_months) {
    if (window_months < 1) throw std::invalid_argument("window must be >= 1");

    // Monthly counts per author, keyed by month index.
    std::unordered_map<std::string, std::map<int, BucketCounts>> by_author;
    for (const Post& p : posts) {
        by_author[p.author][p.month().index()].add_post(p, ctx, false);
    }

    CharacteristicMap out;
    for (const auto& [author, monthly] : by_author) {
        const int first = monthly.begin()->first;
        const int last = monthly.rbegin()->first;
        BucketCounts window;
        for (int m = first; m <= last + window_months - 1; ++m) {
            const auto add_it = monthly.find(m);
            if (add_it != monthly.end()) window.add(add_it->second);
            const auto drop_it = monthly.find(m - window_months);
            if (drop_it != monthly.end()) window.subtract(drop_it->second);
            if (window.posts <= 0) continue;
            out[{author, MonthKey::from_index(m)}] = finalize(window, false);
        }
    }
    return out;
}

double gini(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("undefined Gini: empty input");
    for (double v : values) {
        if (v < 0.0) throw std::invalid_argument("undefined Gini: negative value");
    }

    // Sort once; sum_ij |x_i - x_j| = 2 * sum_i (2i - n - 1) x_(i), 1-based.
    // Both sums run over the sorted sequence so the result is exactly
    // permutation-invariant.
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    double total = 0.0;
    const double n = static_cast<double>(sorted.size());
    double weighted = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        total += sorted[i];
        weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * sorted[i];
    }
    if (total <= 0.0) throw std::invalid_argument("undefined Gini: all-zero input");
    return weighted / (n * total);
}

AcceptanceResult normalize_scores(std::span<const Post> posts) {
    std::map<EntityMonth, std::vector<double>> groups;
    for (const Post& p : posts) groups[{p.community, p.month()}].push_back(p.score);

    std::map<EntityMonth, double> medians;
    AcceptanceResult result;
    for (auto& [key, scores] : groups) {
        std::sort(scores.begin(), scores.end());
        const std::size_t n = scores.size();
        const double median =
            n % 2 == 1 ? scores[n / 2] : (scores[n / 2 - 1] + scores[n / 2]) / 2.0;
        if (median > 0.0) {
            medians[key] = median;
        } else {
            ++result.excluded_groups;
        }
    }
    for (const Post& p : posts) {
        const auto it = medians.find({p.community, p.month()});
        if (it == medians.end()) {
            ++result.excluded_posts;
            continue;
        }
        result.scores.push_back({p.id, static_cast<double>(p.score) / it->second});
    }
    return result;
}

void write_characteristics_csv(
    std::ostream& out,
    std::span<const std::pair<std::string, const CharacteristicMap*>> sections) {
    out << "entity_kind,entity,year,month,characteristic,value\n";
    std::vector<std::string> rows;
    for (const auto& [kind, map] : sections) {
        for (const auto& [key, vec] : *map) {
            const auto& [entity, month] = key;
            for (const auto& [name, value] : vec.values) {
                std::string row;
                append_csv_field(row, kind);
                row += ',';
                append_csv_field(row, entity);
                row += ',';
                char ym[16];
                std::snprintf(ym, sizeof(ym), "%04d,%02d", month.year, month.month);
                row += ym;
                row += ',';
                append_csv_field(row, name);
                row += ',';
                row += fmt_double(value);
                rows.push_back(std::move(row));
            }
        }
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& row : rows) out << row << '\n';
}

void write_characteristics_csv(std::ostream& out, const CharacteristicsBundle& bundle) {
    const std::array<std::pair<std::string, const CharacteristicMap*>, 3> sections = {{
        {"community", &bundle.community},
        {"author", &bundle.author},
        {"author_monthly", &bundle.author_monthly},
    }};
    write_characteristics_csv(out, sections);
}

CharacteristicsBundle load_characteristics_csv(std::istream& in) {
    CharacteristicsBundle bundle;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.rfind("entity_kind,", 0) == 0) continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 6) throw std::runtime_error("bad characteristics row: " + line);
        CharacteristicMap* map = nullptr;
        if (fields[0] == "community") map = &bundle.community;
        else if (fields[0] == "author") map = &bundle.author;
        else if (fields[0] == "author_monthly") map = &bundle.author_monthly;
        else throw std::runtime_error("unknown entity kind: " + fields[0]);
        std::int64_t year = 0, month = 0;
        double value = 0.0;
        if (!parse_int64(fields[2], year) || !parse_int64(fields[3], month) ||
            !parse_double(fields[5], value))
            throw std::runtime_error("bad characteristics row: " + line);
        MonthKey mk{static_cast<int>(year), static_cast<int>(month)};
        (*map)[{fields[1], mk}].values[fields[4]] = value;
    }
    if (in.bad()) throw std::runtime_error("characteristics stream read failure");
    return bundle;
}

}  // namespace context_eval
