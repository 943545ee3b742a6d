#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "context_eval/io.hpp"

namespace fs = std::filesystem;
using context_eval::read_file;

namespace {

const fs::path kWork = fs::temp_directory_path() / "ctx_eval_cli_test";

int run_cli(const std::string& args) {
    const std::string cmd =
        "CONTEXT_EVAL_LOG=quiet " CONTEXT_EVAL_CLI_BIN " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

void write_config(const fs::path& path, const fs::path& out_dir) {
    std::ofstream out(path);
    out << R"({
  "out": ")" << out_dir.string() << R"(",
  "seed": 7,
  "test_fraction": 0.2,
  "min_group_size": 1,
  "synth": {
    "n_communities": 10,
    "n_authors": 50,
    "months": 8,
    "n_posts": 4000,
    "n_domains": 30
  }
})";
}

int run_pipeline(const fs::path& config) {
    for (const char* stage : {"synth", "ingest", "label", "characterize", "baselines",
                              "evaluate", "correlate", "report"}) {
        const int code = run_cli(std::string(stage) + " --config " + config.string());
        if (code != 0) return code;
    }
    return 0;
}

// Relative path -> file bytes for everything except logs/.
std::map<std::string, std::string> snapshot(const fs::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        const std::string rel = fs::relative(entry.path(), root).string();
        if (rel.rfind("logs/", 0) == 0) continue;
        files[rel] = read_file(entry.path());
    }
    return files;
}

}  // namespace

TEST_CASE("full pipeline produces the report bundle") {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
    const fs::path config = kWork / "config.json";
    write_config(config, kWork / "out");
    REQUIRE(run_pipeline(config) == 0);

    for (const char* name :
         {"group_metrics.csv", "kde_f1.csv", "quartile_wordcloud.json",
          "correlations_confidence.csv", "correlations_groups.csv",
          "acceptance_deciles.csv", "index.json"}) {
        CHECK(fs::exists(kWork / "out" / "report" / name));
    }
    // run logs exist but live outside the comparable artifact tree
    CHECK(fs::exists(kWork / "out" / "logs" / "synth_log.json"));

    SUBCASE("rerun with the same config and seed is byte-identical") {
        const fs::path config2 = kWork / "config2.json";
        write_config(config2, kWork / "out2");
        REQUIRE(run_pipeline(config2) == 0);
        const auto a = snapshot(kWork / "out");
        const auto b = snapshot(kWork / "out2");
        REQUIRE(a.size() == b.size());
        for (const auto& [rel, content] : a) {
            REQUIRE(b.count(rel));
            CHECK_MESSAGE(content == b.at(rel), "file differs: ", rel);
        }
    }

    SUBCASE("evaluate without a predictions file exits 2") {
        fs::remove(kWork / "out" / "synth" / "predictions.csv");
        CHECK(run_cli("evaluate --config " + config.string()) == 2);
    }
}

TEST_CASE("report without upstream artifacts exits 2") {
    const fs::path dir = kWork / "empty";
    fs::remove_all(dir);
    fs::create_directories(dir);
    CHECK(run_cli("report --out " + dir.string()) == 2);
}

TEST_CASE("garbage archive trips the parse-rate guard") {
    const fs::path dir = kWork / "garbage";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path archive = dir / "bad.ndjson";
    {
        std::ofstream out(archive);
        for (int i = 0; i < 100; ++i) out << "not json at all\n";
        out << R"({"id":"p1","author":"a","subreddit":"s","created_utc":1451606400})"
            << "\n";
    }
    CHECK(run_cli("ingest --archive " + archive.string() + " --out " + dir.string()) ==
          3);
}
