#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "context_eval/baselines.hpp"
#include "context_eval/evaluation.hpp"

namespace context_eval {

// Report-bundle writers. All output is deterministic: rows are emitted in
// sorted order and numbers go through fmt_double.

void write_predictions_csv(std::span<const PredictionRecord> predictions,
                           std::ostream& out);
std::vector<PredictionRecord> load_predictions_csv(std::istream& in,
                                                   double decision_threshold = 0.5);

void write_coverage_csv(const std::map<MonthKey, double>& coverage, std::ostream& out);

void write_group_metrics_csv(std::span<const GroupReport> community,
                             std::span<const GroupReport> author, std::ostream& out);
void write_confidence_correlations_csv(std::span<const CorrelationEntry> entries,
                                       std::ostream& out);
void write_group_correlations_csv(std::span<const GroupCorrelationEntry> entries,
                                  std::ostream& out);
void write_acceptance_deciles_csv(std::span<const DecileCorrelationEntry> entries,
                                  std::ostream& out);
void write_kde_csv(const KdeCurve& curve, std::ostream& out);
void write_quartile_wordcloud_json(std::span<const GroupReport> community,
                                   std::ostream& out);

struct ModelComparisonRow {
    std::string model;
    std::string community;
    std::int64_t n_posts = 0;
    MetricBundle metrics;
};

void write_model_comparison_csv(std::span<const ModelComparisonRow> rows,
                                std::ostream& out);

void write_acceptance_scores_csv(std::span<const AcceptanceScore> scores,
                                 std::ostream& out);
std::vector<AcceptanceScore> load_acceptance_scores_csv(std::istream& in);

}  // namespace context_eval
