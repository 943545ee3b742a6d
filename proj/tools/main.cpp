// context-eval: batch pipeline for context-based evaluation of a binary
// deception detection model. Subcommands run one stage each and exchange
// artifacts through the output directory; `report` assembles the bundle.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "CLI11.hpp"
#include "json.hpp"

#include "context_eval/archive.hpp"
#include "context_eval/baselines.hpp"
#include "context_eval/characteristics.hpp"
#include "context_eval/csv.hpp"
#include "context_eval/evaluation.hpp"
#include "context_eval/io.hpp"
#include "context_eval/labeling.hpp"
#include "context_eval/reports.hpp"
#include "context_eval/stats.hpp"
#include "context_eval/synth.hpp"

namespace fs = std::filesystem;
using namespace context_eval;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitMissingArtifact = 2;
constexpr int kExitParseRate = 3;

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("CONTEXT_EVAL_LOG");
        if (!env) return LogLevel::Info;
        const std::string v(env);
        if (v == "quiet" || v == "error") return LogLevel::Quiet;
        if (v == "debug") return LogLevel::Debug;
        return LogLevel::Info;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) std::cerr << "[info] " << msg << '\n';
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::Debug) std::cerr << "[debug] " << msg << '\n';
}

void log_error(const std::string& msg) { std::cerr << "[error] " << msg << '\n'; }

struct RunConfig {
    std::vector<std::string> archives;
    std::string annotations;
    std::string non_news;
    std::string predictions;
    std::string format_mapping;
    std::string out = "out";
    std::uint64_t seed = 42;
    double test_fraction = 0.2;
    double decision_threshold = 0.5;
    double r_threshold = 0.25;
    double group_r_threshold = 0.3;
    int min_group_size = 1;
    int author_window_months = 6;
    int community_window_months = 1;
    double max_parse_failure_rate = 0.5;
    int threads = 0;  // 0 = hardware concurrency
    int kde_grid_size = 256;
    bool per_community_deciles = false;
    json synth = json::object();

    fs::path out_dir() const { return fs::path(out); }

    // Stage artifact locations.
    fs::path posts_path() const { return out_dir() / "ingest" / "posts.ndjson"; }
    fs::path labeled_path() const { return out_dir() / "label" / "labeled.csv"; }
    fs::path train_ids_path() const { return out_dir() / "label" / "train_ids.txt"; }
    fs::path test_ids_path() const { return out_dir() / "label" / "test_ids.txt"; }
    fs::path coverage_path() const { return out_dir() / "label" / "coverage.csv"; }
    fs::path characteristics_path() const {
        return out_dir() / "characterize" / "characteristics.csv";
    }
    fs::path scores_path() const {
        return out_dir() / "characterize" / "acceptance_scores.csv";
    }
    fs::path baselines_path() const { return out_dir() / "baselines" / "baselines.csv"; }

    int effective_threads() const {
        if (threads > 0) return threads;
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }

    void resolve_defaults() {
        const std::string synth_dir = (out_dir() / "synth").string();
        if (archives.empty()) archives = {synth_dir + "/archive.ndjson"};
        if (annotations.empty()) annotations = synth_dir + "/annotations.csv";
        if (non_news.empty()) non_news = synth_dir + "/nonnews.txt";
        if (predictions.empty()) predictions = synth_dir + "/predictions.csv";
    }
};

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    json j = json::parse(in);
    cfg.archives = j.value("archives", cfg.archives);
    cfg.annotations = j.value("annotations", cfg.annotations);
    cfg.non_news = j.value("non_news", cfg.non_news);
    cfg.predictions = j.value("predictions", cfg.predictions);
    cfg.format_mapping = j.value("format", cfg.format_mapping);
    cfg.out = j.value("out", cfg.out);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.test_fraction = j.value("test_fraction", cfg.test_fraction);
    cfg.decision_threshold = j.value("decision_threshold", cfg.decision_threshold);
    cfg.r_threshold = j.value("r_threshold", cfg.r_threshold);
    cfg.group_r_threshold = j.value("group_r_threshold", cfg.group_r_threshold);
    cfg.min_group_size = j.value("min_group_size", cfg.min_group_size);
    cfg.author_window_months = j.value("author_window_months", cfg.author_window_months);
    cfg.community_window_months =
        j.value("community_window_months", cfg.community_window_months);
    cfg.max_parse_failure_rate =
        j.value("max_parse_failure_rate", cfg.max_parse_failure_rate);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.kde_grid_size = j.value("kde_grid_size", cfg.kde_grid_size);
    cfg.per_community_deciles = j.value("per_community_deciles", cfg.per_community_deciles);
    if (j.contains("synth")) cfg.synth = j["synth"];
    return cfg;
}

class StageTimer {
  public:
    explicit StageTimer(std::string stage) : stage_(std::move(stage)) {}

    void count(const std::string& key, std::int64_t value) { counts_[key] = value; }

    void write(const RunConfig& cfg) const {
        using namespace std::chrono;
        const auto elapsed = duration_cast<milliseconds>(steady_clock::now() - start_);
        json j;
        j["stage"] = stage_;
        j["duration_ms"] = elapsed.count();
        j["counts"] = counts_;
        atomic_write(cfg.out_dir() / "logs" / (stage_ + "_log.json"),
                     [&j](std::ostream& out) { out << j.dump(2) << '\n'; });
    }

  private:
    std::string stage_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
    std::map<std::string, std::int64_t> counts_;
};

std::optional<int> require_artifacts(const std::vector<fs::path>& paths) {
    for (const auto& p : paths) {
        if (!fs::exists(p)) {
            log_error("missing upstream artifact: " + p.string());
            return kExitMissingArtifact;
        }
    }
    return std::nullopt;
}

ArchiveFormat archive_format(const RunConfig& cfg) {
    if (cfg.format_mapping.empty()) return ArchiveFormat{};
    return ArchiveFormat::load(cfg.format_mapping);
}

std::vector<Post> load_posts(const fs::path& path, ParseStats* stats = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open posts: " + path.string());
    return parse_archive(in, ArchiveFormat{}, stats);
}

AnnotationMap load_annotation_file(const fs::path& path, AnnotationLoadStats* stats = nullptr) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open annotations: " + path.string());
    return load_annotations(in, stats);
}

DomainList load_non_news_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open non-news list: " + path.string());
    return load_domain_list(in);
}

std::unordered_set<std::string> load_id_set(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open id list: " + path.string());
    std::unordered_set<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) ids.insert(line);
    }
    return ids;
}

// Rebuilds the labeled test set from raw artifacts, sorted by post id.
std::vector<LabeledPost> load_test_set(const RunConfig& cfg) {
    const auto posts = load_posts(cfg.posts_path());
    const auto annotations = load_annotation_file(cfg.annotations);
    const auto test_ids = load_id_set(cfg.test_ids_path());
    auto labeled = label_posts(posts, annotations);
    std::vector<LabeledPost> test;
    for (auto& lp : labeled) {
        if (test_ids.count(lp.post.id)) test.push_back(std::move(lp));
    }
    std::sort(test.begin(), test.end(), [](const LabeledPost& a, const LabeledPost& b) {
        return a.post.id < b.post.id;
    });
    return test;
}

// Inner-joins predictions onto the test set by post id.
std::pair<std::vector<LabeledPost>, std::vector<PredictionRecord>> align_predictions(
    std::vector<LabeledPost> test, const std::vector<PredictionRecord>& predictions) {
    std::unordered_map<std::string, const PredictionRecord*> by_id;
    by_id.reserve(predictions.size());
    for (const auto& p : predictions) by_id[p.post_id] = &p;
    std::vector<LabeledPost> kept;
    std::vector<PredictionRecord> aligned;
    std::size_t missing = 0;
    for (auto& lp : test) {
        const auto it = by_id.find(lp.post.id);
        if (it == by_id.end()) {
            ++missing;
            continue;
        }
        aligned.push_back(*it->second);
        kept.push_back(std::move(lp));
    }
    if (missing > 0)
        log_info("predictions missing for " + std::to_string(missing) + " test posts");
    return {std::move(kept), std::move(aligned)};
}

// ---- subcommands ----

int cmd_synth(const RunConfig& cfg) {
    StageTimer timer("synth");
    SynthConfig scfg = cfg.synth.empty() ? SynthConfig{}
                                         : SynthConfig::from_json_text(cfg.synth.dump());
    scfg.seed = cfg.seed;  // all randomness flows from the run seed
    const SynthData data = generate(scfg);
    write_corpus(data, scfg, cfg.out_dir() / "synth");
    timer.count("posts", static_cast<std::int64_t>(data.posts.size()));
    timer.count("labeled_posts", static_cast<std::int64_t>(data.predictions.size()));
    timer.count("annotated_domains", static_cast<std::int64_t>(data.annotations.size()));
    timer.write(cfg);
    log_info("synth: " + std::to_string(data.posts.size()) + " posts -> " +
             (cfg.out_dir() / "synth").string());
    return kExitOk;
}

int cmd_ingest(const RunConfig& cfg) {
    StageTimer timer("ingest");
    std::vector<fs::path> inputs(cfg.archives.begin(), cfg.archives.end());
    if (const auto missing = require_artifacts(inputs)) return *missing;

    const ArchiveFormat format = archive_format(cfg);
    std::vector<Post> posts;
    ParseStats total;
    for (const auto& archive : inputs) {
        std::ifstream in(archive, std::ios::binary);
        if (!in) {
            log_error("cannot open archive: " + archive.string());
            return kExitError;
        }
        ParseStats stats = parse_archive(
            in, format, [&posts](Post&& p) { posts.push_back(std::move(p)); });
        log_debug(archive.string() + ": " + std::to_string(stats.posts) + " posts, " +
                  std::to_string(stats.skipped) + " skipped");
        total.lines += stats.lines;
        total.posts += stats.posts;
        total.skipped += stats.skipped;
    }
    timer.count("lines", static_cast<std::int64_t>(total.lines));
    timer.count("posts", static_cast<std::int64_t>(total.posts));
    timer.count("skipped", static_cast<std::int64_t>(total.skipped));
    timer.write(cfg);

    if (total.lines > 0) {
        const double rate =
            static_cast<double>(total.skipped) / static_cast<double>(total.lines);
        if (rate > cfg.max_parse_failure_rate) {
            log_error("parse failure rate " + fmt_double(rate) + " exceeds threshold " +
                      fmt_double(cfg.max_parse_failure_rate));
            return kExitParseRate;
        }
    }
    atomic_write(cfg.posts_path(),
                 [&posts](std::ostream& out) { serialize_posts(posts, out); });
    log_info("ingest: " + std::to_string(total.posts) + " posts (" +
             std::to_string(total.skipped) + " skipped)");
    return kExitOk;
}

int cmd_label(const RunConfig& cfg) {
    StageTimer timer("label");
    if (const auto missing = require_artifacts(
            {cfg.posts_path(), fs::path(cfg.annotations), fs::path(cfg.non_news)}))
        return *missing;

    const auto posts = load_posts(cfg.posts_path());
    AnnotationLoadStats ann_stats;
    const auto annotations = load_annotation_file(cfg.annotations, &ann_stats);
    const auto non_news = load_non_news_file(cfg.non_news);

    LabelStats label_stats;
    auto labeled = label_posts(posts, annotations, &label_stats);
    std::sort(labeled.begin(), labeled.end(),
              [](const LabeledPost& a, const LabeledPost& b) {
                  return a.post.id < b.post.id;
              });
    const DatasetSplit split = build_dataset(labeled, cfg.seed, cfg.test_fraction);
    const auto coverage = measure_coverage(posts, annotations, non_news);

    atomic_write(cfg.labeled_path(), [&labeled](std::ostream& out) {
        out << "post_id,true_class,domain\n";
        for (const auto& lp : labeled) {
            std::string row;
            append_csv_field(row, lp.post.id);
            row += ',';
            row += to_string(lp.true_class);
            row += ',';
            append_csv_field(row, lp.post.domain);
            out << row << '\n';
        }
    });
    const auto write_ids = [](const std::vector<LabeledPost>& set, std::ostream& out) {
        for (const auto& lp : set) out << lp.post.id << '\n';
    };
    atomic_write(cfg.train_ids_path(),
                 [&](std::ostream& out) { write_ids(split.train, out); });
    atomic_write(cfg.test_ids_path(),
                 [&](std::ostream& out) { write_ids(split.test, out); });
    atomic_write(cfg.coverage_path(),
                 [&coverage](std::ostream& out) { write_coverage_csv(coverage, out); });

    timer.count("posts", static_cast<std::int64_t>(posts.size()));
    timer.count("labeled", static_cast<std::int64_t>(label_stats.labeled));
    timer.count("dropped_unlabeled", static_cast<std::int64_t>(label_stats.dropped));
    timer.count("annotation_rows_skipped", static_cast<std::int64_t>(ann_stats.skipped));
    timer.count("train", static_cast<std::int64_t>(split.train.size()));
    timer.count("test", static_cast<std::int64_t>(split.test.size()));
    timer.write(cfg);
    log_info("label: " + std::to_string(label_stats.labeled) + " labeled, train=" +
             std::to_string(split.train.size()) + " test=" +
             std::to_string(split.test.size()));
    return kExitOk;
}

int cmd_characterize(const RunConfig& cfg) {
    StageTimer timer("characterize");
    if (const auto missing = require_artifacts(
            {cfg.posts_path(), fs::path(cfg.annotations), fs::path(cfg.non_news)}))
        return *missing;

    const auto posts = load_posts(cfg.posts_path());
    const auto annotations = load_annotation_file(cfg.annotations);
    const auto non_news = load_non_news_file(cfg.non_news);
    const CharacteristicContext ctx{&annotations, &non_news};

    CharacteristicsBundle bundle;
    bundle.community = aggregate_community(posts, ctx);
    bundle.author = aggregate_author_rolling(posts, ctx, cfg.author_window_months);
    bundle.author_monthly = aggregate_author_rolling(posts, ctx, 1);
    const AcceptanceResult acceptance = normalize_scores(posts);

    atomic_write(cfg.characteristics_path(), [&bundle](std::ostream& out) {
        write_characteristics_csv(out, bundle);
    });
    atomic_write(cfg.scores_path(), [&acceptance](std::ostream& out) {
        write_acceptance_scores_csv(acceptance.scores, out);
    });

    timer.count("posts", static_cast<std::int64_t>(posts.size()));
    timer.count("community_buckets", static_cast<std::int64_t>(bundle.community.size()));
    timer.count("author_buckets", static_cast<std::int64_t>(bundle.author.size()));
    timer.count("scores", static_cast<std::int64_t>(acceptance.scores.size()));
    timer.count("score_excluded_posts",
                static_cast<std::int64_t>(acceptance.excluded_posts));
    timer.write(cfg);
    log_info("characterize: " + std::to_string(bundle.community.size()) +
             " community buckets, " + std::to_string(bundle.author.size()) +
             " author buckets");
    return kExitOk;
}

int cmd_baselines(const RunConfig& cfg) {
    StageTimer timer("baselines");
    if (const auto missing = require_artifacts({cfg.posts_path(), fs::path(cfg.annotations),
                                                cfg.test_ids_path(),
                                                cfg.characteristics_path()}))
        return *missing;

    const auto test = load_test_set(cfg);
    std::ifstream char_in(cfg.characteristics_path());
    const CharacteristicsBundle bundle = load_characteristics_csv(char_in);
    const auto predictions = run_baselines(test, bundle.author, bundle.community, cfg.seed);

    atomic_write(cfg.baselines_path(), [&predictions](std::ostream& out) {
        write_baselines_csv(predictions, out);
    });
    timer.count("test_posts", static_cast<std::int64_t>(test.size()));
    timer.count("rows", static_cast<std::int64_t>(predictions.size()));
    timer.write(cfg);
    log_info("baselines: " + std::to_string(predictions.size()) + " rows");
    return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg) {
    StageTimer timer("evaluate");
    if (const auto missing = require_artifacts({cfg.posts_path(), fs::path(cfg.annotations),
                                                cfg.test_ids_path(),
                                                fs::path(cfg.predictions)}))
        return *missing;

    std::ifstream pred_in(cfg.predictions);
    const auto raw_predictions = load_predictions_csv(pred_in, cfg.decision_threshold);
    auto [test, predictions] = align_predictions(load_test_set(cfg), raw_predictions);
    if (test.empty()) {
        log_error("no test posts with predictions");
        return kExitError;
    }

    const MetricBundle overall = metrics(test, predictions);
    const auto community_groups =
        group_metrics(test, predictions, EntityKind::Community, cfg.min_group_size);
    const auto author_groups =
        group_metrics(test, predictions, EntityKind::Author, cfg.min_group_size);

    const fs::path dir = cfg.out_dir() / "evaluate";
    atomic_write(dir / "group_metrics.csv", [&](std::ostream& out) {
        write_group_metrics_csv(community_groups, author_groups, out);
    });
    atomic_write(dir / "quartile_wordcloud.json", [&](std::ostream& out) {
        write_quartile_wordcloud_json(community_groups, out);
    });

    std::vector<double> community_f1;
    community_f1.reserve(community_groups.size());
    for (const auto& g : community_groups) community_f1.push_back(g.metrics.f1);
    atomic_write(dir / "kde_f1.csv", [&](std::ostream& out) {
        try {
            write_kde_csv(kde(community_f1, cfg.kde_grid_size), out);
        } catch (const std::invalid_argument& e) {
            out << "grid,density\n";
            log_info(std::string("kde_f1 degenerate: ") + e.what());
        }
    });

    // Per-model comparison rows: the evaluated model plus any baselines.
    std::vector<ModelComparisonRow> comparison;
    json summary;
    const auto add_model = [&](const std::string& name,
                               const std::vector<PredictionRecord>& preds) {
        const MetricBundle m = metrics(test, preds);
        summary["models"][name] = {{"precision", m.precision}, {"recall", m.recall},
                                   {"f1", m.f1},               {"macro_f1", m.macro_f1},
                                   {"tp", m.tp},               {"fp", m.fp},
                                   {"fn", m.fn},               {"tn", m.tn}};
        for (const auto& g : group_metrics(test, preds, EntityKind::Community, 1)) {
            comparison.push_back({name, g.key, g.n_posts, g.metrics});
        }
    };
    add_model("model", predictions);

    if (fs::exists(cfg.baselines_path())) {
        std::ifstream base_in(cfg.baselines_path());
        const auto baseline_rows = load_baselines_csv(base_in);
        std::map<BaselineKind, std::unordered_map<std::string, const BaselinePrediction*>>
            by_kind;
        for (const auto& row : baseline_rows) by_kind[row.baseline][row.post_id] = &row;
        for (const auto& [kind, rows] : by_kind) {
            std::vector<PredictionRecord> preds;
            preds.reserve(test.size());
            bool complete = true;
            for (const auto& lp : test) {
                const auto it = rows.find(lp.post.id);
                if (it == rows.end()) {
                    complete = false;
                    break;
                }
                preds.push_back({lp.post.id, it->second->p_deceptive,
                                 it->second->sampled_class});
            }
            if (complete) add_model(std::string(to_string(kind)), preds);
            else log_info("baseline " + std::string(to_string(kind)) +
                          " does not cover the test set; skipped in comparison");
        }
    }
    atomic_write(dir / "model_comparison.csv", [&](std::ostream& out) {
        write_model_comparison_csv(comparison, out);
    });

    summary["overall"] = {{"precision", overall.precision},
                          {"recall", overall.recall},
                          {"f1", overall.f1},
                          {"macro_f1", overall.macro_f1},
                          {"support_deceptive", overall.support_deceptive()},
                          {"support_credible", overall.support_credible()}};
    summary["n_test_posts"] = test.size();
    summary["n_communities"] = community_groups.size();
    summary["n_authors"] = author_groups.size();
    atomic_write(dir / "summary.json",
                 [&summary](std::ostream& out) { out << summary.dump(2) << '\n'; });

    timer.count("test_posts", static_cast<std::int64_t>(test.size()));
    timer.count("communities", static_cast<std::int64_t>(community_groups.size()));
    timer.count("authors", static_cast<std::int64_t>(author_groups.size()));
    timer.write(cfg);
    log_info("evaluate: overall F1 " + fmt_double(overall.f1) + " over " +
             std::to_string(test.size()) + " test posts");
    return kExitOk;
}

int cmd_correlate(const RunConfig& cfg) {
    StageTimer timer("correlate");
    if (const auto missing = require_artifacts(
            {cfg.posts_path(), fs::path(cfg.annotations), cfg.test_ids_path(),
             fs::path(cfg.predictions), cfg.characteristics_path(), cfg.scores_path()}))
        return *missing;

    std::ifstream pred_in(cfg.predictions);
    const auto raw_predictions = load_predictions_csv(pred_in, cfg.decision_threshold);
    auto [test, predictions] = align_predictions(load_test_set(cfg), raw_predictions);
    if (test.empty()) {
        log_error("no test posts with predictions");
        return kExitError;
    }
    std::ifstream char_in(cfg.characteristics_path());
    const CharacteristicsBundle bundle = load_characteristics_csv(char_in);
    std::ifstream scores_in(cfg.scores_path());
    const auto scores = load_acceptance_scores_csv(scores_in);

    const auto confidence_entries =
        correlate_confidence(test, predictions, bundle.community, bundle.author,
                             cfg.r_threshold, cfg.effective_threads());

    std::vector<GroupCorrelationEntry> group_entries;
    for (const EntityKind kind : {EntityKind::Community, EntityKind::Author}) {
        const auto groups = group_metrics(test, predictions, kind, cfg.min_group_size);
        const CharacteristicMap& monthly =
            kind == EntityKind::Community ? bundle.community : bundle.author_monthly;
        try {
            const auto entries = correlate_group_metrics(groups, monthly, kind, test,
                                                         cfg.group_r_threshold);
            group_entries.insert(group_entries.end(), entries.begin(), entries.end());
        } catch (const std::invalid_argument& e) {
            log_info(std::string("group correlations (") +
                     std::string(to_string(kind)) + ") skipped: " + e.what());
        }
    }

    const auto deciles = acceptance_decile_analysis(test, predictions, scores,
                                                    cfg.per_community_deciles);

    const fs::path dir = cfg.out_dir() / "correlate";
    atomic_write(dir / "correlations_confidence.csv", [&](std::ostream& out) {
        write_confidence_correlations_csv(confidence_entries, out);
    });
    atomic_write(dir / "correlations_groups.csv", [&](std::ostream& out) {
        write_group_correlations_csv(group_entries, out);
    });
    atomic_write(dir / "acceptance_deciles.csv", [&](std::ostream& out) {
        write_acceptance_deciles_csv(deciles, out);
    });

    timer.count("test_posts", static_cast<std::int64_t>(test.size()));
    timer.count("confidence_entries", static_cast<std::int64_t>(confidence_entries.size()));
    timer.count("group_entries", static_cast<std::int64_t>(group_entries.size()));
    timer.write(cfg);
    log_info("correlate: " + std::to_string(confidence_entries.size()) +
             " confidence entries, " + std::to_string(group_entries.size()) +
             " group entries");
    return kExitOk;
}

int cmd_report(const RunConfig& cfg) {
    StageTimer timer("report");
    const fs::path evaluate_dir = cfg.out_dir() / "evaluate";
    const fs::path correlate_dir = cfg.out_dir() / "correlate";
    const std::vector<fs::path> required = {
        evaluate_dir / "group_metrics.csv",
        evaluate_dir / "kde_f1.csv",
        evaluate_dir / "quartile_wordcloud.json",
        correlate_dir / "correlations_confidence.csv",
        correlate_dir / "correlations_groups.csv",
        correlate_dir / "acceptance_deciles.csv",
    };
    if (const auto missing = require_artifacts(required)) return *missing;

    const std::vector<fs::path> optional = {
        evaluate_dir / "summary.json",
        evaluate_dir / "model_comparison.csv",
        cfg.coverage_path(),
    };

    const fs::path report_dir = cfg.out_dir() / "report";
    fs::create_directories(report_dir);
    std::vector<std::string> files;
    const auto assemble = [&](const fs::path& src) {
        const std::string content = read_file(src);
        atomic_write(report_dir / src.filename(),
                     [&content](std::ostream& out) { out << content; });
        files.push_back(src.filename().string());
    };
    for (const auto& src : required) assemble(src);
    for (const auto& src : optional) {
        if (fs::exists(src)) assemble(src);
    }
    std::sort(files.begin(), files.end());

    json index;
    index["tool"] = "context-eval";
    index["files"] = files;
    atomic_write(report_dir / "index.json",
                 [&index](std::ostream& out) { out << index.dump(2) << '\n'; });

    timer.count("files", static_cast<std::int64_t>(files.size()));
    timer.write(cfg);
    log_info("report: " + std::to_string(files.size()) + " files -> " +
             report_dir.string());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"context-eval: contextual evaluation of deception detection models"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON run configuration")->configurable(false);
    // Flag overrides; flags win over the config file.
    std::uint64_t seed = 0;
    int threads = 0, min_group_size = 0, kde_grid = 0;
    double r_threshold = 0, decision_threshold = 0, test_fraction = 0,
           group_r_threshold = 0;
    std::string out_dir;
    std::vector<std::string> archives;
    std::string annotations, non_news, predictions, format_mapping;
    bool per_community_deciles = false;

    auto* seed_opt = app.add_option("--seed", seed, "Run seed (all randomness)");
    auto* threads_opt = app.add_option("--threads", threads, "Worker thread cap");
    auto* out_opt = app.add_option("--out", out_dir, "Output directory");
    auto* mgs_opt = app.add_option("--min-group-size", min_group_size,
                                   "Minimum posts per reported group");
    auto* rthr_opt = app.add_option("--r-threshold", r_threshold,
                                    "|r| inclusion threshold for confidence correlations");
    auto* grthr_opt = app.add_option("--group-r-threshold", group_r_threshold,
                                     "|r| inclusion threshold for group correlations");
    auto* dthr_opt = app.add_option("--decision-threshold", decision_threshold,
                                    "p_deceptive decision threshold");
    auto* tfrac_opt = app.add_option("--test-fraction", test_fraction,
                                     "Held-out fraction per class");
    auto* kde_opt = app.add_option("--kde-grid-size", kde_grid, "KDE grid points");
    auto* arch_opt = app.add_option("--archive", archives, "Archive file (repeatable)");
    auto* ann_opt = app.add_option("--annotations", annotations, "Annotation table CSV");
    auto* nn_opt = app.add_option("--non-news", non_news, "Non-news domain list");
    auto* pred_opt = app.add_option("--predictions", predictions, "Model predictions CSV");
    auto* fmt_opt = app.add_option("--format", format_mapping, "Archive field mapping JSON");
    auto* pcd_opt = app.add_flag("--per-community-deciles", per_community_deciles,
                                 "Rank acceptance deciles within each community");

    const std::vector<std::string> stages = {"synth",     "ingest",   "label",
                                             "characterize", "baselines", "evaluate",
                                             "correlate", "report"};
    for (const auto& name : stages) app.add_subcommand(name)->fallthrough();
    app.get_subcommand("synth")->description("Generate a synthetic corpus");
    app.get_subcommand("ingest")->description("Parse archives into normalized posts");
    app.get_subcommand("label")->description("Propagate source labels; split train/test");
    app.get_subcommand("characterize")->description("Compute community/author vectors");
    app.get_subcommand("baselines")->description("Run the three naive baselines");
    app.get_subcommand("evaluate")->description("Metrics, quartiles, KDE, comparisons");
    app.get_subcommand("correlate")->description("Correlation and decile reports");
    app.get_subcommand("report")->description("Assemble the report bundle");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = load_config(config_path);
        if (*seed_opt) cfg.seed = seed;
        if (*threads_opt) cfg.threads = threads;
        if (*out_opt) cfg.out = out_dir;
        if (*mgs_opt) cfg.min_group_size = min_group_size;
        if (*rthr_opt) cfg.r_threshold = r_threshold;
        if (*grthr_opt) cfg.group_r_threshold = group_r_threshold;
        if (*dthr_opt) cfg.decision_threshold = decision_threshold;
        if (*tfrac_opt) cfg.test_fraction = test_fraction;
        if (*kde_opt) cfg.kde_grid_size = kde_grid;
        if (*arch_opt) cfg.archives = archives;
        if (*ann_opt) cfg.annotations = annotations;
        if (*nn_opt) cfg.non_news = non_news;
        if (*pred_opt) cfg.predictions = predictions;
        if (*fmt_opt) cfg.format_mapping = format_mapping;
        if (*pcd_opt) cfg.per_community_deciles = per_community_deciles;
        cfg.resolve_defaults();

        const std::string stage = app.get_subcommands().front()->get_name();
        if (stage == "synth") return cmd_synth(cfg);
        if (stage == "ingest") return cmd_ingest(cfg);
        if (stage == "label") return cmd_label(cfg);
        if (stage == "characterize") return cmd_characterize(cfg);
        if (stage == "baselines") return cmd_baselines(cfg);
        if (stage == "evaluate") return cmd_evaluate(cfg);
        if (stage == "correlate") return cmd_correlate(cfg);
        if (stage == "report") return cmd_report(cfg);
        log_error("unknown subcommand: " + stage);
        return kExitError;
    } catch (const std::exception& e) {
        log_error(e.what());
        return kExitError;
    }
}
