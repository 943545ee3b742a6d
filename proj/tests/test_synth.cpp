#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"

#include "context_eval/archive.hpp"
#include "context_eval/io.hpp"
#include "context_eval/labeling.hpp"
#include "context_eval/reports.hpp"
#include "context_eval/synth.hpp"

using namespace context_eval;
namespace fs = std::filesystem;

namespace {

SynthConfig small_config() {
    SynthConfig cfg;
    cfg.n_communities = 8;
    cfg.n_authors = 40;
    cfg.months = 8;
    cfg.n_posts = 3000;
    cfg.n_domains = 30;
    cfg.seed = 12345;
    return cfg;
}

}  // namespace

TEST_CASE("synth validates configs") {
    SynthConfig cfg = small_config();
    cfg.months = 0;
    CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.planted_rho = 1.5;
    CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.nonnews_fraction = 0.7;
    cfg.unlabeled_fraction = 0.5;
    CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.author_alpha = 0;
    cfg.author_beta = 0;
    CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
}

TEST_CASE("same seed produces byte-identical corpora") {
    const SynthConfig cfg = small_config();
    const SynthData a = generate(cfg);
    const SynthData b = generate(cfg);

    std::ostringstream arch_a, arch_b, pred_a, pred_b;
    serialize_posts(a.posts, arch_a);
    serialize_posts(b.posts, arch_b);
    CHECK(arch_a.str() == arch_b.str());
    write_predictions_csv(a.predictions, pred_a);
    write_predictions_csv(b.predictions, pred_b);
    CHECK(pred_a.str() == pred_b.str());

    SynthConfig other = cfg;
    other.seed = 999;
    std::ostringstream arch_c;
    serialize_posts(generate(other).posts, arch_c);
    CHECK(arch_a.str() != arch_c.str());
}

TEST_CASE("generated archive round-trips through the parser with zero skips") {
    const SynthData data = generate(small_config());
    std::ostringstream arch;
    serialize_posts(data.posts, arch);
    std::istringstream in(arch.str());
    ParseStats stats;
    const auto parsed = parse_archive(in, ArchiveFormat{}, &stats);
    CHECK(stats.skipped == 0);
    CHECK(parsed.size() == data.posts.size());
}

TEST_CASE("degenerate tendencies pin the class mix") {
    SynthConfig cfg = small_config();
    cfg.author_alpha = 0;  // every author tendency exactly 0
    const SynthData all_credible = generate(cfg);
    std::size_t deceptive = 0;
    for (const auto& p : all_credible.posts) {
        const auto it = all_credible.annotations.find(p.domain);
        if (it != all_credible.annotations.end() &&
            it->second.binary_class == BinaryClass::Deceptive)
            ++deceptive;
    }
    CHECK(deceptive == 0);

    cfg = small_config();
    cfg.author_beta = 0;  // tendency exactly 1
    const SynthData all_deceptive = generate(cfg);
    for (const auto& pred : all_deceptive.predictions) {
        // every labeled post links to a deceptive source
        const Post& post = all_deceptive.posts[std::stoul(pred.post_id.substr(1))];
        CHECK(all_deceptive.annotations.at(post.domain).binary_class ==
              BinaryClass::Deceptive);
    }
}

TEST_CASE("empirical author fractions track manifest tendencies") {
    SynthConfig cfg = small_config();
    cfg.n_authors = 30;
    cfg.n_posts = 12000;  // ~300 labeled links per author
    cfg.author_alpha = 2.0;
    cfg.author_beta = 2.0;
    const SynthData data = generate(cfg);

    std::map<std::string, std::pair<int, int>> counts;  // author -> (deceptive, labeled)
    for (const Post& p : data.posts) {
        const auto it = data.annotations.find(p.domain);
        if (it == data.annotations.end()) continue;
        auto& [dec, lab] = counts[p.author];
        ++lab;
        dec += it->second.binary_class == BinaryClass::Deceptive;
    }
    double total_abs_err = 0;
    int n_authors = 0;
    for (const auto& [author, c] : counts) {
        REQUIRE(c.second > 50);
        const double empirical = static_cast<double>(c.first) / c.second;
        total_abs_err += std::fabs(empirical - data.manifest.author_tendency.at(author));
        ++n_authors;
    }
    CHECK(n_authors == 30);
    CHECK(total_abs_err / n_authors < 0.06);
}

TEST_CASE("write_corpus emits a loadable bundle") {
    const auto dir = fs::temp_directory_path() / "ctx_eval_synth_test";
    fs::remove_all(dir);
    const SynthConfig cfg = small_config();
    const SynthData data = generate(cfg);
    write_corpus(data, cfg, dir);

    for (const char* name :
         {"archive.ndjson", "annotations.csv", "nonnews.txt", "predictions.csv",
          "manifest.json"}) {
        CHECK(fs::exists(dir / name));
    }
    // labeling the archive against the saved annotations reproduces the
    // prediction file's coverage exactly
    std::ifstream arch(dir / "archive.ndjson");
    const auto posts = parse_archive(arch, ArchiveFormat{});
    std::ifstream ann_in(dir / "annotations.csv");
    const auto annotations = load_annotations(ann_in);
    LabelStats stats;
    const auto labeled = label_posts(posts, annotations, &stats);
    CHECK(labeled.size() == data.predictions.size());
    fs::remove_all(dir);
}
