#include "context_eval/baselines.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "context_eval/csv.hpp"
#include "context_eval/rng.hpp"

namespace context_eval {

namespace {

BaselinePrediction flip(const std::string& post_id, BaselineKind kind, double p,
                        std::uint64_t seed) {
    BaselinePrediction pred;
    pred.post_id = post_id;
    pred.baseline = kind;
    pred.p_deceptive = p;
    const double u = uniform_for(seed, to_string(kind), post_id);
    pred.sampled_class = u < p ? BinaryClass::Deceptive : BinaryClass::Credible;
    return pred;
}

double deceptive_fraction(const CharacteristicVector* vec) {
    if (!vec) return 0.5;
    const double deceptive = vec->get("binary.deceptive.count");
    const double credible = vec->get("binary.credible.count");
    const double labeled = deceptive + credible;
    return labeled > 0.0 ? deceptive / labeled : 0.5;
}

}  // namespace

std::string_view to_string(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::AuthorHistory: return "author_history";
        case BaselineKind::CommunityHistory: return "community_history";
        case BaselineKind::FiftyFifty: return "fifty_fifty";
    }
    return "fifty_fifty";
}

BaselinePrediction author_history_baseline(const LabeledPost& post,
                                           const CharacteristicVector* author_vector,
                                           std::uint64_t seed) {
    return flip(post.post.id, BaselineKind::AuthorHistory, deceptive_fraction(author_vector),
                seed);
}

BaselinePrediction community_history_baseline(const LabeledPost& post,
                                              const CharacteristicVector* community_vector,
                                              std::uint64_t seed) {
    return flip(post.post.id, BaselineKind::CommunityHistory,
                deceptive_fraction(community_vector), seed);
}

BaselinePrediction fifty_fifty_baseline(const LabeledPost& post, std::uint64_t seed) {
    return flip(post.post.id, BaselineKind::FiftyFifty, 0.5, seed);
}

std::vector<BaselinePrediction> run_baselines(std::span<const LabeledPost> test,
                                              const CharacteristicMap& author_rolling,
                                              const CharacteristicMap& community_monthly,
                                              std::uint64_t seed) {
    std::vector<BaselinePrediction> out;
    out.reserve(test.size() * 3);
    for (const LabeledPost& lp : test) {
        const MonthKey month = lp.post.month();
        const auto author_it = author_rolling.find({lp.post.author, month});
        const auto community_it = community_monthly.find({lp.post.community, month});
        out.push_back(author_history_baseline(
            lp, author_it == author_rolling.end() ? nullptr : &author_it->second, seed));
        out.push_back(community_history_baseline(
            lp, community_it == community_monthly.end() ? nullptr : &community_it->second,
            seed));
        out.push_back(fifty_fifty_baseline(lp, seed));
    }
    std::sort(out.begin(), out.end(),
              [](const BaselinePrediction& a, const BaselinePrediction& b) {
                  if (a.post_id != b.post_id) return a.post_id < b.post_id;
                  return static_cast<int>(a.baseline) < static_cast<int>(b.baseline);
              });
    return out;
}

void write_baselines_csv(std::span<const BaselinePrediction> predictions,
                         std::ostream& out) {
    out << "post_id,baseline,p_deceptive,sampled_class\n";
    for (const auto& pred : predictions) {
        std::string row;
        append_csv_field(row, pred.post_id);
        row += ',';
        row += to_string(pred.baseline);
        row += ',';
        row += fmt_double(pred.p_deceptive);
        row += ',';
        row += to_string(pred.sampled_class);
        out << row << '\n';
    }
}

std::vector<BaselinePrediction> load_baselines_csv(std::istream& in) {
    std::vector<BaselinePrediction> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.rfind("post_id,", 0) == 0) continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 4) throw std::runtime_error("bad baseline row: " + line);
        BaselinePrediction pred;
        pred.post_id = fields[0];
        if (fields[1] == "author_history") pred.baseline = BaselineKind::AuthorHistory;
        else if (fields[1] == "community_history") pred.baseline = BaselineKind::CommunityHistory;
        else if (fields[1] == "fifty_fifty") pred.baseline = BaselineKind::FiftyFifty;
        else throw std::runtime_error("unknown baseline: " + fields[1]);
        if (!parse_double(fields[2], pred.p_deceptive))
            throw std::runtime_error("bad baseline row: " + line);
        const auto cls = parse_binary_class(fields[3]);
        if (!cls || *cls == BinaryClass::Unlabeled)
            throw std::runtime_error("bad baseline row: " + line);
        pred.sampled_class = *cls;
        out.push_back(std::move(pred));
    }
    if (in.bad()) throw std::runtime_error("baseline stream read failure");
    return out;
}

}  // namespace context_eval
