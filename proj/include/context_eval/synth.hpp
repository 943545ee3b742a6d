#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "context_eval/annotations.hpp"
#include "context_eval/types.hpp"

namespace context_eval {

// Controlled-ground-truth corpus generator. Every latent parameter is drawn
// from seed-keyed streams (sharded per author), so output is byte-identical
// for a fixed seed regardless of generation order.
struct SynthConfig {
    int n_communities = 20;
    int n_authors = 200;
    int months = 12;
    int n_posts = 10000;
    int n_domains = 60;
    MonthKey start{2016, 1};

    // Beta(alpha, beta) over each author's deceptive fraction.
    double author_alpha = 0.5;
    double author_beta = 0.5;
    // Beta(alpha, beta) over each community's appetite for deceptive links.
    double community_alpha = 2.0;
    double community_beta = 2.0;
    // Log-normal post score, rounded to an integer.
    double score_mu = 1.0;
    double score_sigma = 1.0;

    double nonnews_fraction = 0.15;    // links to non-news domains
    double unlabeled_fraction = 0.10;  // potential news links with no annotation
    double removed_fraction = 0.05;

    enum class ConfidenceModel { Independent, PlantedAuthor, PlantedAcceptance };
    ConfidenceModel confidence_model = ConfidenceModel::Independent;
    double planted_rho = 0.0;
    // PlantedAcceptance couples confidence to normalized score only above
    // this acceptance quantile.
    double acceptance_percentile = 0.8;

    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument
    static SynthConfig from_json_text(const std::string& json_text);
    static SynthConfig from_json_file(const std::filesystem::path& path);
};

struct SynthManifest {
    std::map<std::string, double> author_tendency;
    std::map<std::string, double> community_mix;
    std::map<std::string, std::string> domain_class;
    std::map<std::string, double> post_confidence;  // true-class confidence per labeled post
};

struct SynthData {
    std::vector<Post> posts;  // id order
    AnnotationMap annotations;
    DomainList non_news;
    std::vector<PredictionRecord> predictions;  // labeled posts only, id order
    SynthManifest manifest;
};

SynthData generate(const SynthConfig& config);

// Writes archive.ndjson, annotations.csv, nonnews.txt, predictions.csv and
// manifest.json into out_dir.
void write_corpus(const SynthData& data, const SynthConfig& config,
                  const std::filesystem::path& out_dir);

}  // namespace context_eval
