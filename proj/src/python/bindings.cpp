#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "context_eval/archive.hpp"
#include "context_eval/characteristics.hpp"
#include "context_eval/evaluation.hpp"
#include "context_eval/stats.hpp"
#include "context_eval/types.hpp"

namespace py = pybind11;
using namespace context_eval;

namespace {

MetricBundle metrics_from_bools(const std::vector<bool>& truths,
                                const std::vector<bool>& predictions) {
    if (truths.size() != predictions.size())
        throw std::invalid_argument("truths and predictions differ in length");
    std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t i = 0; i < truths.size(); ++i) {
        if (truths[i] && predictions[i]) ++tp;
        else if (!truths[i] && predictions[i]) ++fp;
        else if (truths[i] && !predictions[i]) ++fn;
        else ++tn;
    }
    return metrics_from_counts(tp, fp, fn, tn);
}

py::dict parse_archive_text(const std::string& ndjson) {
    std::istringstream in(ndjson);
    ParseStats stats;
    const auto posts = parse_archive(in, ArchiveFormat{}, &stats);
    py::list rows;
    for (const Post& p : posts) {
        py::dict row;
        row["id"] = p.id;
        row["author"] = p.author;
        row["community"] = p.community;
        row["created"] = p.created;
        row["domain"] = p.domain;
        row["score"] = p.score;
        row["removed"] = p.removed;
        row["title"] = p.title;
        rows.append(row);
    }
    py::dict out;
    out["posts"] = rows;
    out["lines"] = stats.lines;
    out["skipped"] = stats.skipped;
    return out;
}

}  // namespace

PYBIND11_MODULE(_context_eval, m) {
    m.doc() = "Native core of context-eval: archive parsing and the statistics "
              "used by the evaluation reports.";

    m.def("extract_domain", &extract_domain, py::arg("url"),
          "Lowercased host with www./port/path stripped; '' when hostless.");

    m.def(
        "gini",
        [](const std::vector<double>& values) { return gini(values); },
        py::arg("values"),
        "Population Gini coefficient of a non-negative sequence.");

    m.def(
        "pearson",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            const PearsonResult res = pearson(x, y);
            return py::make_tuple(res.r, res.p);
        },
        py::arg("x"), py::arg("y"),
        "(r, two-sided p) with the exact t-distribution, n-2 dof.");

    m.def(
        "kde",
        [](const std::vector<double>& values, int grid_size) {
            const KdeCurve curve = kde(values, grid_size);
            return py::make_tuple(curve.grid, curve.density, curve.bandwidth);
        },
        py::arg("values"), py::arg("grid_size") = 256,
        "Gaussian KDE with Scott's bandwidth: (grid, density, bandwidth).");

    m.def(
        "metrics",
        [](const std::vector<bool>& truths, const std::vector<bool>& predictions) {
            const MetricBundle b = metrics_from_bools(truths, predictions);
            py::dict out;
            out["precision"] = b.precision;
            out["recall"] = b.recall;
            out["f1"] = b.f1;
            out["macro_f1"] = b.macro_f1;
            out["tp"] = b.tp;
            out["fp"] = b.fp;
            out["fn"] = b.fn;
            out["tn"] = b.tn;
            return out;
        },
        py::arg("truths"), py::arg("predictions"),
        "Precision/recall/F1 with the positive class encoded as True.");

    m.def("parse_archive", &parse_archive_text, py::arg("ndjson"),
          "Parse NDJSON archive text with the default field mapping.");

    m.def(
        "normalized_scores",
        [](const std::vector<std::string>& ids, const std::vector<double>& scores) {
            // single-group convenience wrapper
            if (ids.size() != scores.size())
                throw std::invalid_argument("ids and scores differ in length");
            std::vector<Post> posts(ids.size());
            for (std::size_t i = 0; i < ids.size(); ++i) {
                posts[i].id = ids[i];
                posts[i].author = "a";
                posts[i].community = "c";
                posts[i].created = 1;
                posts[i].score = static_cast<int>(scores[i]);
            }
            const AcceptanceResult res = normalize_scores(posts);
            py::dict out;
            for (const auto& s : res.scores) out[py::str(s.post_id)] = s.normalized_score;
            return out;
        },
        py::arg("ids"), py::arg("scores"),
        "Median-normalized scores for one group of posts.");

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
