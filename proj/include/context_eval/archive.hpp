#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "context_eval/types.hpp"

namespace context_eval {

// Field mapping for newline-delimited JSON archives. Defaults match the
// Pushshift-style reddit dumps; override via a JSON mapping file.
struct ArchiveFormat {
    std::string id_field = "id";
    std::string author_field = "author";
    std::string community_field = "subreddit";
    std::string created_field = "created_utc";
    std::string url_field = "url";
    std::string score_field = "score";
    // A record is "removed" when this field is present and non-null.
    std::string removed_field = "removed_by_category";
    std::string title_field = "title";

    static ArchiveFormat load(const std::filesystem::path& mapping_file);
};

struct ParseStats {
    std::size_t lines = 0;
    std::size_t posts = 0;
    std::size_t skipped = 0;
};

using PostSink = std::function<void(Post&&)>;

// Streams one Post per well-formed line into `sink`, in input order.
// Malformed lines are counted in stats.skipped, never fatal. An unreadable
// stream throws std::runtime_error.
ParseStats parse_archive(std::istream& in, const ArchiveFormat& format,
                         const PostSink& sink);

std::vector<Post> parse_archive(std::istream& in, const ArchiveFormat& format,
                                ParseStats* stats = nullptr);

// NDJSON serialization in the given field mapping; parse_archive round-trips
// every Post field bit-exactly.
void serialize_posts(std::span<const Post> posts, std::ostream& out,
                     const ArchiveFormat& format = {});

std::string serialize_post_line(const Post& post, const ArchiveFormat& format = {});

// Lowercased host with one leading "www." and any port/path/query stripped;
// "" when the string has no recognizable host. Total function.
std::string extract_domain(std::string_view url);

}  // namespace context_eval
