#include "context_eval/reports.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "context_eval/csv.hpp"
#include "json.hpp"

namespace context_eval {

namespace {

std::string fmt_or_empty(double v, bool defined) {
    return defined ? fmt_double(v) : std::string{};
}

void append_sig(std::string& row, double p, bool defined) {
    row += ',';
    row += (defined && p < 0.05) ? "1" : "0";
    row += ',';
    row += (defined && p < 0.01) ? "1" : "0";
}

}  // namespace

void write_predictions_csv(std::span<const PredictionRecord> predictions,
                           std::ostream& out) {
    out << "post_id,p_deceptive\n";
    for (const auto& pred : predictions) {
        std::string row;
        append_csv_field(row, pred.post_id);
        row += ',';
        row += fmt_double(pred.p_deceptive);
        out << row << '\n';
    }
}

std::vector<PredictionRecord> load_predictions_csv(std::istream& in,
                                                   double decision_threshold) {
    std::vector<PredictionRecord> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.rfind("post_id,", 0) == 0) continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 2) throw std::runtime_error("bad prediction row: " + line);
        PredictionRecord rec;
        rec.post_id = fields[0];
        if (!parse_double(fields[1], rec.p_deceptive) || rec.p_deceptive < 0.0 ||
            rec.p_deceptive > 1.0)
            throw std::runtime_error("bad prediction row: " + line);
        rec.predicted_class = predicted_class_for(rec.p_deceptive, decision_threshold);
        out.push_back(std::move(rec));
    }
    if (in.bad()) throw std::runtime_error("prediction stream read failure");
    return out;
}

void write_coverage_csv(const std::map<MonthKey, double>& coverage, std::ostream& out) {
    out << "year,month,coverage\n";
    for (const auto& [month, value] : coverage) {
        char ym[16];
        std::snprintf(ym, sizeof(ym), "%04d,%02d,", month.year, month.month);
        out << ym << fmt_double(value) << '\n';
    }
}

void write_group_metrics_csv(std::span<const GroupReport> community,
                             std::span<const GroupReport> author, std::ostream& out) {
    out << "entity_kind,entity,n_posts,precision,recall,f1,macro_f1,quartile\n";
    const auto emit = [&out](std::string_view kind, std::span<const GroupReport> groups) {
        std::vector<const GroupReport*> sorted;
        sorted.reserve(groups.size());
        for (const auto& g : groups) sorted.push_back(&g);
        std::sort(sorted.begin(), sorted.end(),
                  [](const GroupReport* a, const GroupReport* b) { return a->key < b->key; });
        for (const auto* g : sorted) {
            std::string row(kind);
            row += ',';
            append_csv_field(row, g->key);
            row += ',';
            row += std::to_string(g->n_posts);
            row += ',';
            row += fmt_double(g->metrics.precision);
            row += ',';
            row += fmt_double(g->metrics.recall);
            row += ',';
            row += fmt_double(g->metrics.f1);
            row += ',';
            row += fmt_double(g->metrics.macro_f1);
            row += ',';
            row += std::to_string(g->quartile);
            out << row << '\n';
        }
    };
    emit("community", community);
    emit("author", author);
}

void write_confidence_correlations_csv(std::span<const CorrelationEntry> entries,
                                       std::ostream& out) {
    out << "characteristic,subset,r,p_value,n,sig_05,sig_01,included\n";
    for (const auto& e : entries) {
        std::string row;
        append_csv_field(row, e.characteristic);
        row += ',';
        row += to_string(e.subset);
        row += ',';
        row += fmt_or_empty(e.r, e.defined);
        row += ',';
        row += fmt_or_empty(e.p, e.defined);
        row += ',';
        row += std::to_string(e.n);
        append_sig(row, e.p, e.defined);
        row += ',';
        row += e.included ? "1" : "0";
        out << row << '\n';
    }
}

void write_group_correlations_csv(std::span<const GroupCorrelationEntry> entries,
                                  std::ostream& out) {
    out << "entity_kind,characteristic,metric,r,p_value,n,sig_05,sig_01,included\n";
    for (const auto& e : entries) {
        std::string row(to_string(e.kind));
        row += ',';
        append_csv_field(row, e.characteristic);
        row += ',';
        row += e.metric;
        row += ',';
        row += fmt_or_empty(e.r, e.defined);
        row += ',';
        row += fmt_or_empty(e.p, e.defined);
        row += ',';
        row += std::to_string(e.n);
        append_sig(row, e.p, e.defined);
        row += ',';
        row += e.included ? "1" : "0";
        out << row << '\n';
    }
}

void write_acceptance_deciles_csv(std::span<const DecileCorrelationEntry> entries,
                                  std::ostream& out) {
    out << "decile,subset,r,p_value,n,sig_05,sig_01\n";
    for (const auto& e : entries) {
        std::string row = std::to_string(e.decile);
        row += ',';
        row += to_string(e.subset);
        row += ',';
        row += fmt_or_empty(e.r, e.defined);
        row += ',';
        row += fmt_or_empty(e.p, e.defined);
        row += ',';
        row += std::to_string(e.n);
        append_sig(row, e.p, e.defined);
        out << row << '\n';
    }
}

void write_kde_csv(const KdeCurve& curve, std::ostream& out) {
    out << "grid,density\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        out << fmt_double(curve.grid[i]) << ',' << fmt_double(curve.density[i]) << '\n';
    }
}

void write_quartile_wordcloud_json(std::span<const GroupReport> community,
                                   std::ostream& out) {
    std::vector<const GroupReport*> sorted;
    sorted.reserve(community.size());
    for (const auto& g : community) sorted.push_back(&g);
    std::sort(sorted.begin(), sorted.end(),
              [](const GroupReport* a, const GroupReport* b) { return a->key < b->key; });
    nlohmann::json arr = nlohmann::json::array();
    for (const auto* g : sorted) {
        arr.push_back({{"community", g->key},
                       {"n_posts", g->n_posts},
                       {"f1", g->metrics.f1},
                       {"quartile", g->quartile}});
    }
    out << arr.dump(2) << '\n';
}

void write_model_comparison_csv(std::span<const ModelComparisonRow> rows,
                                std::ostream& out) {
    out << "model,community,n_posts,precision,recall,f1\n";
    std::vector<const ModelComparisonRow*> sorted;
    sorted.reserve(rows.size());
    for (const auto& r : rows) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(),
              [](const ModelComparisonRow* a, const ModelComparisonRow* b) {
                  if (a->model != b->model) return a->model < b->model;
                  return a->community < b->community;
              });
    for (const auto* r : sorted) {
        std::string row;
        append_csv_field(row, r->model);
        row += ',';
        append_csv_field(row, r->community);
        row += ',';
        row += std::to_string(r->n_posts);
        row += ',';
        row += fmt_double(r->metrics.precision);
        row += ',';
        row += fmt_double(r->metrics.recall);
        row += ',';
        row += fmt_double(r->metrics.f1);
        out << row << '\n';
    }
}

void write_acceptance_scores_csv(std::span<const AcceptanceScore> scores,
                                 std::ostream& out) {
    out << "post_id,normalized_score\n";
    for (const auto& s : scores) {
        std::string row;
        append_csv_field(row, s.post_id);
        row += ',';
        row += fmt_double(s.normalized_score);
        out << row << '\n';
    }
}

std::vector<AcceptanceScore> load_acceptance_scores_csv(std::istream& in) {
    std::vector<AcceptanceScore> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.rfind("post_id,", 0) == 0) continue;
        }
        const auto fields = split_csv_line(line);
        AcceptanceScore s;
        if (fields.size() != 2 || !parse_double(fields[1], s.normalized_score))
            throw std::runtime_error("bad acceptance score row: " + line);
        s.post_id = fields[0];
        out.push_back(std::move(s));
    }
    if (in.bad()) throw std::runtime_error("acceptance score stream read failure");
    return out;
}

}  // namespace context_eval
