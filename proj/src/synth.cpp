#include "context_eval/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "context_eval/archive.hpp"
#include "context_eval/characteristics.hpp"
#include "context_eval/csv.hpp"
#include "context_eval/io.hpp"
#include "context_eval/reports.hpp"
#include "context_eval/rng.hpp"
#include "context_eval/stats.hpp"
#include "json.hpp"

namespace context_eval {

namespace {

// Strictly inside (0, 1).
double open_uniform(SplitMix64& rng) {
    return (static_cast<double>(rng.next() >> 12) + 0.5) * 0x1.0p-52;
}

double normal_sample(SplitMix64& rng) { return normal_quantile(open_uniform(rng)); }

// Marsaglia-Tsang.
double gamma_sample(SplitMix64& rng, double shape) {
    if (shape < 1.0) {
        const double u = open_uniform(rng);
        return gamma_sample(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal_sample(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = open_uniform(rng);
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

// alpha or beta of 0 act as point masses at 0 / 1.
double beta_sample(SplitMix64& rng, double alpha, double beta) {
    if (alpha <= 0.0) return 0.0;
    if (beta <= 0.0) return 1.0;
    const double g1 = gamma_sample(rng, alpha);
    const double g2 = gamma_sample(rng, beta);
    return g1 / (g1 + g2);
}

std::string zero_padded(std::string_view prefix, int n, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%0*d", width, n);
    return std::string(prefix) + buf;
}

struct DomainUniverse {
    std::vector<std::string> credible;
    std::vector<std::string> deceptive;
    std::vector<std::string> unlabeled;
    std::vector<std::string> non_news;
};

DomainUniverse make_domains(const SynthConfig& cfg, SynthData& data) {
    DomainUniverse universe;
    const int n = cfg.n_domains;
    const int n_credible = std::max(1, n * 2 / 5);
    const int n_deceptive = std::max(1, n * 2 / 5);
    const int n_unlabeled = std::max(1, n / 10);
    const int n_non_news = std::max(1, n - n_credible - n_deceptive - n_unlabeled);

    static constexpr std::array<VolkovaCategory, 5> kDeceptiveCategories = {
        VolkovaCategory::Propaganda, VolkovaCategory::Satire, VolkovaCategory::Clickbait,
        VolkovaCategory::Conspiracy, VolkovaCategory::Hoax};
    static constexpr std::array<MbfcFactualness, 3> kLowFactual = {
        MbfcFactualness::VeryLow, MbfcFactualness::Low, MbfcFactualness::Mixed};
    static constexpr std::array<MbfcFactualness, 3> kHighFactual = {
        MbfcFactualness::Mostly, MbfcFactualness::High, MbfcFactualness::VeryHigh};
    static constexpr std::array<MbfcBias, 8> kAllBias = {
        MbfcBias::ExtremeLeft, MbfcBias::Left,  MbfcBias::CenterLeft,
        MbfcBias::Center,      MbfcBias::CenterRight, MbfcBias::Right,
        MbfcBias::ExtremeRight, MbfcBias::Unlabeled};

    for (int i = 0; i < n_credible; ++i) {
        const std::string domain = zero_padded("credsrc", i, 3) + ".com";
        SplitMix64 rng = stream_for(cfg.seed, "domain", domain);
        SourceAnnotation ann;
        ann.domain = domain;
        ann.binary_class = BinaryClass::Credible;
        ann.volkova_category = VolkovaCategory::Verified;
        ann.mbfc_factualness = kHighFactual[rng.next_below(kHighFactual.size())];
        ann.mbfc_bias = kAllBias[rng.next_below(4)];  // lean left-to-center
        data.annotations[domain] = ann;
        data.manifest.domain_class[domain] = "credible";
        universe.credible.push_back(domain);
    }
    for (int i = 0; i < n_deceptive; ++i) {
        const std::string domain = zero_padded("decsrc", i, 3) + ".com";
        SplitMix64 rng = stream_for(cfg.seed, "domain", domain);
        SourceAnnotation ann;
        ann.domain = domain;
        ann.binary_class = BinaryClass::Deceptive;
        ann.volkova_category = kDeceptiveCategories[i % kDeceptiveCategories.size()];
        ann.mbfc_factualness = kLowFactual[rng.next_below(kLowFactual.size())];
        ann.mbfc_bias = kAllBias[3 + rng.next_below(4)];  // lean center-to-right
        ann.mbfc_flags = kFlagQuestionable;
        if (ann.volkova_category == VolkovaCategory::Satire) ann.mbfc_flags |= kFlagSatire;
        if (ann.volkova_category == VolkovaCategory::Conspiracy)
            ann.mbfc_flags |= kFlagConspiracy;
        if (rng.next_bernoulli(0.1)) ann.mbfc_flags |= kFlagRetired;
        data.annotations[domain] = ann;
        data.manifest.domain_class[domain] = "deceptive";
        universe.deceptive.push_back(domain);
    }
    for (int i = 0; i < n_unlabeled; ++i) {
        const std::string domain = zero_padded("newsite", i, 3) + ".org";
        data.manifest.domain_class[domain] = "unlabeled";
        universe.unlabeled.push_back(domain);
    }
    for (int i = 0; i < n_non_news; ++i) {
        const std::string domain = zero_padded("mediahost", i, 3) + ".net";
        data.non_news.entries.insert(domain);
        data.manifest.domain_class[domain] = "non_news";
        universe.non_news.push_back(domain);
    }
    return universe;
}

// Index into a cumulative-weight table.
std::size_t weighted_pick(const std::vector<double>& cumulative, double u) {
    const double target = u * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    const auto idx = static_cast<std::size_t>(it - cumulative.begin());
    return std::min(idx, cumulative.size() - 1);
}

}  // namespace

void SynthConfig::validate() const {
    const auto fail = [](const std::string& why) {
        throw std::invalid_argument("invalid synth config: " + why);
    };
    if (n_communities <= 0) fail("n_communities must be > 0");
    if (n_authors <= 0) fail("n_authors must be > 0");
    if (months <= 0) fail("months must be > 0");
    if (n_posts <= 0) fail("n_posts must be > 0");
    if (n_domains < 4) fail("n_domains must be >= 4");
    if (author_alpha < 0 || author_beta < 0 || (author_alpha == 0 && author_beta == 0))
        fail("author tendency Beta parameters must be >= 0 and not both 0");
    if (community_alpha < 0 || community_beta < 0 ||
        (community_alpha == 0 && community_beta == 0))
        fail("community mix Beta parameters must be >= 0 and not both 0");
    if (score_sigma <= 0) fail("score_sigma must be > 0");
    if (nonnews_fraction < 0 || unlabeled_fraction < 0 ||
        nonnews_fraction + unlabeled_fraction >= 1.0)
        fail("nonnews_fraction + unlabeled_fraction must be < 1");
    if (removed_fraction < 0 || removed_fraction > 1) fail("removed_fraction out of range");
    if (planted_rho < -1.0 || planted_rho > 1.0) fail("planted_rho must be in [-1, 1]");
    if (acceptance_percentile <= 0.0 || acceptance_percentile >= 1.0)
        fail("acceptance_percentile must be in (0, 1)");
}

SynthConfig SynthConfig::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open synth config: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

SynthConfig SynthConfig::from_json_text(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    SynthConfig cfg;
    cfg.n_communities = j.value("n_communities", cfg.n_communities);
    cfg.n_authors = j.value("n_authors", cfg.n_authors);
    cfg.months = j.value("months", cfg.months);
    cfg.n_posts = j.value("n_posts", cfg.n_posts);
    cfg.n_domains = j.value("n_domains", cfg.n_domains);
    cfg.start.year = j.value("start_year", cfg.start.year);
    cfg.start.month = j.value("start_month", cfg.start.month);
    cfg.author_alpha = j.value("author_alpha", cfg.author_alpha);
    cfg.author_beta = j.value("author_beta", cfg.author_beta);
    cfg.community_alpha = j.value("community_alpha", cfg.community_alpha);
    cfg.community_beta = j.value("community_beta", cfg.community_beta);
    cfg.score_mu = j.value("score_mu", cfg.score_mu);
    cfg.score_sigma = j.value("score_sigma", cfg.score_sigma);
    cfg.nonnews_fraction = j.value("nonnews_fraction", cfg.nonnews_fraction);
    cfg.unlabeled_fraction = j.value("unlabeled_fraction", cfg.unlabeled_fraction);
    cfg.removed_fraction = j.value("removed_fraction", cfg.removed_fraction);
    cfg.planted_rho = j.value("planted_rho", cfg.planted_rho);
    cfg.acceptance_percentile = j.value("acceptance_percentile", cfg.acceptance_percentile);
    cfg.seed = j.value("seed", cfg.seed);
    const std::string model = j.value("confidence_model", std::string("independent"));
    if (model == "independent") cfg.confidence_model = ConfidenceModel::Independent;
    else if (model == "planted_author") cfg.confidence_model = ConfidenceModel::PlantedAuthor;
    else if (model == "planted_acceptance")
        cfg.confidence_model = ConfidenceModel::PlantedAcceptance;
    else throw std::invalid_argument("unknown confidence_model: " + model);
    return cfg;
}

SynthData generate(const SynthConfig& cfg) {
    cfg.validate();
    SynthData data;
    const DomainUniverse universe = make_domains(cfg, data);

    std::vector<std::string> authors(cfg.n_authors);
    std::vector<double> tendency(cfg.n_authors);
    for (int a = 0; a < cfg.n_authors; ++a) {
        authors[a] = zero_padded("a", a, 5);
        SplitMix64 rng = stream_for(cfg.seed, "author_param", authors[a]);
        tendency[a] = beta_sample(rng, cfg.author_alpha, cfg.author_beta);
        data.manifest.author_tendency[authors[a]] = tendency[a];
    }

    std::vector<std::string> communities(cfg.n_communities);
    std::vector<double> mix(cfg.n_communities);
    std::vector<double> cum_deceptive(cfg.n_communities), cum_credible(cfg.n_communities),
        cum_uniform(cfg.n_communities);
    for (int c = 0; c < cfg.n_communities; ++c) {
        communities[c] = zero_padded("c", c, 3);
        SplitMix64 rng = stream_for(cfg.seed, "community_param", communities[c]);
        mix[c] = beta_sample(rng, cfg.community_alpha, cfg.community_beta);
        data.manifest.community_mix[communities[c]] = mix[c];
        cum_deceptive[c] = (c ? cum_deceptive[c - 1] : 0.0) + mix[c];
        cum_credible[c] = (c ? cum_credible[c - 1] : 0.0) + (1.0 - mix[c]);
        cum_uniform[c] = static_cast<double>(c + 1);
    }
    // Degenerate mixes could zero a table; uniform routing is the fallback.
    if (cum_deceptive.back() <= 0.0) cum_deceptive = cum_uniform;
    if (cum_credible.back() <= 0.0) cum_credible = cum_uniform;

    std::vector<SplitMix64> author_stream;
    author_stream.reserve(cfg.n_authors);
    for (int a = 0; a < cfg.n_authors; ++a)
        author_stream.push_back(stream_for(cfg.seed, "author_posts", authors[a]));

    data.posts.resize(cfg.n_posts);
    for (int i = 0; i < cfg.n_posts; ++i) {
        const int a = i % cfg.n_authors;
        SplitMix64& rng = author_stream[a];
        Post& post = data.posts[i];
        post.id = zero_padded("p", i, 8);
        post.author = authors[a];

        const int month_offset = static_cast<int>(rng.next_below(cfg.months));
        const MonthKey month = MonthKey::from_index(cfg.start.index() + month_offset);
        const std::int64_t begin = month_start_epoch(month);
        const std::int64_t span = month_start_epoch(month.next()) - begin;
        post.created = begin + static_cast<std::int64_t>(rng.next_below(span));

        const double kind_roll = rng.next_double();
        bool labeled = false;
        bool deceptive = false;
        if (kind_roll < cfg.nonnews_fraction) {
            post.domain = universe.non_news[rng.next_below(universe.non_news.size())];
        } else if (kind_roll < cfg.nonnews_fraction + cfg.unlabeled_fraction) {
            post.domain = universe.unlabeled[rng.next_below(universe.unlabeled.size())];
        } else {
            labeled = true;
            deceptive = rng.next_bernoulli(tendency[a]);
            const auto& pool = deceptive ? universe.deceptive : universe.credible;
            post.domain = pool[rng.next_below(pool.size())];
        }

        if (labeled) {
            const auto& cum = deceptive ? cum_deceptive : cum_credible;
            post.community = communities[weighted_pick(cum, rng.next_double())];
        } else {
            post.community = communities[rng.next_below(communities.size())];
        }

        const double z = normal_sample(rng);
        const double raw_score = std::exp(cfg.score_mu + cfg.score_sigma * z);
        post.score = static_cast<int>(std::llround(std::min(raw_score, 1e9)));
        post.removed = rng.next_bernoulli(cfg.removed_fraction);
        post.title = "synthetic post " + std::to_string(i);
    }

    // Acceptance ranks for the score-coupled confidence model.
    std::unordered_map<std::string, double> rank_quantile;
    if (cfg.confidence_model == SynthConfig::ConfidenceModel::PlantedAcceptance) {
        const AcceptanceResult normalized = normalize_scores(data.posts);
        std::vector<const AcceptanceScore*> ranked;
        ranked.reserve(normalized.scores.size());
        for (const auto& s : normalized.scores) ranked.push_back(&s);
        std::sort(ranked.begin(), ranked.end(),
                  [](const AcceptanceScore* x, const AcceptanceScore* y) {
                      if (x->normalized_score != y->normalized_score)
                          return x->normalized_score < y->normalized_score;
                      return x->post_id < y->post_id;
                  });
        for (std::size_t rank = 0; rank < ranked.size(); ++rank) {
            rank_quantile[ranked[rank]->post_id] =
                (static_cast<double>(rank) + 0.5) / static_cast<double>(ranked.size());
        }
    }

    const double rho = cfg.planted_rho;
    const double noise_scale = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    for (const Post& post : data.posts) {
        const auto ann_it = data.annotations.find(post.domain);
        if (ann_it == data.annotations.end()) continue;
        const bool deceptive = ann_it->second.binary_class == BinaryClass::Deceptive;

        SplitMix64 rng = stream_for(cfg.seed, "confidence", post.id);
        double confidence = 0.0;
        switch (cfg.confidence_model) {
            case SynthConfig::ConfidenceModel::Independent: {
                confidence = beta_sample(rng, 4.0, 2.0);
                break;
            }
            case SynthConfig::ConfidenceModel::PlantedAuthor: {
                const int a = std::stoi(post.author.substr(1));
                const double t_quantile =
                    incomplete_beta(std::max(cfg.author_alpha, 1e-9),
                                    std::max(cfg.author_beta, 1e-9), tendency[a]);
                const double z_author =
                    normal_quantile(std::clamp(t_quantile, 1e-12, 1.0 - 1e-12));
                confidence = normal_cdf(rho * z_author + noise_scale * normal_sample(rng));
                break;
            }
            case SynthConfig::ConfidenceModel::PlantedAcceptance: {
                const auto q_it = rank_quantile.find(post.id);
                if (q_it != rank_quantile.end() &&
                    q_it->second > cfg.acceptance_percentile) {
                    const double v = (q_it->second - cfg.acceptance_percentile) /
                                     (1.0 - cfg.acceptance_percentile);
                    const double z_score =
                        normal_quantile(std::clamp(v, 1e-12, 1.0 - 1e-12));
                    confidence =
                        normal_cdf(rho * z_score + noise_scale * normal_sample(rng));
                } else {
                    confidence = normal_cdf(normal_sample(rng));
                }
                break;
            }
        }

        PredictionRecord rec;
        rec.post_id = post.id;
        rec.p_deceptive = deceptive ? confidence : 1.0 - confidence;
        rec.predicted_class = predicted_class_for(rec.p_deceptive);
        data.predictions.push_back(std::move(rec));
        data.manifest.post_confidence[post.id] = confidence;
    }
    return data;
}

void write_corpus(const SynthData& data, const SynthConfig& cfg,
                  const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    atomic_write(out_dir / "archive.ndjson",
                 [&data](std::ostream& out) { serialize_posts(data.posts, out); });
    atomic_write(out_dir / "annotations.csv",
                 [&data](std::ostream& out) { save_annotations(data.annotations, out); });
    atomic_write(out_dir / "nonnews.txt", [&data](std::ostream& out) {
        out << "# synthetic non-news domains\n";
        save_domain_list(data.non_news, out);
    });
    atomic_write(out_dir / "predictions.csv", [&data](std::ostream& out) {
        write_predictions_csv(data.predictions, out);
    });
    atomic_write(out_dir / "manifest.json", [&](std::ostream& out) {
        nlohmann::json j;
        j["config"] = {
            {"n_communities", cfg.n_communities},
            {"n_authors", cfg.n_authors},
            {"months", cfg.months},
            {"n_posts", cfg.n_posts},
            {"n_domains", cfg.n_domains},
            {"seed", cfg.seed},
        };
        j["authors"] = data.manifest.author_tendency;
        j["communities"] = data.manifest.community_mix;
        j["domains"] = data.manifest.domain_class;
        out << j.dump(2) << '\n';
    });
}

}  // namespace context_eval
