#include "context_eval/annotations.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "context_eval/csv.hpp"

namespace context_eval {

BinaryClass binary_class_of(VolkovaCategory category) {
    switch (category) {
        case VolkovaCategory::Verified:
            return BinaryClass::Credible;
        case VolkovaCategory::Propaganda:
        case VolkovaCategory::Satire:
        case VolkovaCategory::Clickbait:
        case VolkovaCategory::Conspiracy:
        case VolkovaCategory::Hoax:
            return BinaryClass::Deceptive;
        case VolkovaCategory::Unlabeled:
            return BinaryClass::Unlabeled;
    }
    return BinaryClass::Unlabeled;
}

AnnotationMap load_annotations(std::istream& in, AnnotationLoadStats* stats) {
    AnnotationLoadStats local;
    AnnotationMap map;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (!header_seen) {
            header_seen = true;
            if (line.rfind("domain,", 0) == 0) continue;  // header row
        }
        ++local.rows;
        const auto fields = split_csv_line(line);
        if (fields.size() < 6) {
            ++local.skipped;
            continue;
        }
        SourceAnnotation ann;
        ann.domain = fields[0];
        std::transform(ann.domain.begin(), ann.domain.end(), ann.domain.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        const auto binary = parse_binary_class(fields[1]);
        const auto volkova = parse_volkova_category(fields[2]);
        const auto factualness = parse_mbfc_factualness(fields[3]);
        const auto bias = parse_mbfc_bias(fields[4]);
        const auto flags = parse_mbfc_flags(fields[5]);
        if (ann.domain.empty() || !binary || !volkova || !factualness || !bias || !flags) {
            ++local.skipped;
            continue;
        }
        ann.binary_class = *binary;
        ann.volkova_category = *volkova;
        ann.mbfc_factualness = *factualness;
        ann.mbfc_bias = *bias;
        ann.mbfc_flags = *flags;

        const BinaryClass forced = binary_class_of(ann.volkova_category);
        if (ann.binary_class == BinaryClass::Unlabeled) {
            ann.binary_class = forced;
        } else if (forced != BinaryClass::Unlabeled && forced != ann.binary_class) {
            ++local.skipped;  // contradicts the category; producer's problem
            continue;
        }

        map[ann.domain] = std::move(ann);
        ++local.loaded;
    }
    if (in.bad()) throw std::runtime_error("annotation stream read failure");
    if (stats) *stats = local;
    return map;
}

void save_annotations(const AnnotationMap& annotations, std::ostream& out) {
    out << "domain,binary_class,volkova_category,mbfc_factualness,mbfc_bias,mbfc_flags\n";
    std::map<std::string, const SourceAnnotation*> ordered;
    for (const auto& [domain, ann] : annotations) ordered[domain] = &ann;
    for (const auto& [domain, ann] : ordered) {
        std::vector<std::string> fields = {
            domain,
            std::string(to_string(ann->binary_class)),
            std::string(to_string(ann->volkova_category)),
            std::string(to_string(ann->mbfc_factualness)),
            std::string(to_string(ann->mbfc_bias)),
            mbfc_flags_to_string(ann->mbfc_flags),
        };
        out << join_csv(fields) << '\n';
    }
}

DomainList load_domain_list(std::istream& in) {
    DomainList list;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        // trim
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        std::string domain = line.substr(begin, end - begin + 1);
        std::transform(domain.begin(), domain.end(), domain.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        list.entries.insert(std::move(domain));
    }
    if (in.bad()) throw std::runtime_error("domain list stream read failure");
    return list;
}

void save_domain_list(const DomainList& list, std::ostream& out) {
    std::vector<std::string> sorted(list.entries.begin(), list.entries.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& d : sorted) out << d << '\n';
}

}  // namespace context_eval
