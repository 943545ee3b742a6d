#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <unordered_map>

#include "context_eval/types.hpp"

namespace context_eval {

using AnnotationMap = std::unordered_map<std::string, SourceAnnotation>;

struct AnnotationLoadStats {
    std::size_t rows = 0;
    std::size_t loaded = 0;
    std::size_t skipped = 0;
};

// CSV with header: domain,binary_class,volkova_category,mbfc_factualness,
// mbfc_bias,mbfc_flags (flags semicolon-separated). Rows whose explicit
// binary_class contradicts the volkova category are skipped and counted;
// an unlabeled binary_class is derived from the category when possible.
AnnotationMap load_annotations(std::istream& in, AnnotationLoadStats* stats = nullptr);

void save_annotations(const AnnotationMap& annotations, std::ostream& out);

// Plain text, one domain per line, '#' starts a comment.
DomainList load_domain_list(std::istream& in);

void save_domain_list(const DomainList& list, std::ostream& out);

// The binary class a volkova category forces, or Unlabeled.
BinaryClass binary_class_of(VolkovaCategory category);

}  // namespace context_eval
