#include "context_eval/archive.hpp"

#include <rapidjson/document.h>
#include <rapidjson/error/en.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace context_eval {

namespace {

void lowercase_inplace(std::string& s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
}

bool get_string(const rapidjson::Document& doc, const std::string& field,
                std::string& out) {
    const auto it = doc.FindMember(field.c_str());
    if (it == doc.MemberEnd() || !it->value.IsString()) return false;
    out.assign(it->value.GetString(), it->value.GetStringLength());
    return true;
}

// created_utc shows up as int, float, and decimal string across dump years.
bool get_timestamp(const rapidjson::Document& doc, const std::string& field,
                   std::int64_t& out) {
    const auto it = doc.FindMember(field.c_str());
    if (it == doc.MemberEnd()) return false;
    const auto& v = it->value;
    if (v.IsInt64()) {
        out = v.GetInt64();
        return true;
    }
    if (v.IsDouble()) {
        out = static_cast<std::int64_t>(v.GetDouble());
        return true;
    }
    if (v.IsString()) {
        const char* s = v.GetString();
        const char* end = s + v.GetStringLength();
        double d = 0;
        const auto res = std::from_chars(s, end, d);
        if (res.ec != std::errc{} || res.ptr != end) return false;
        out = static_cast<std::int64_t>(d);
        return true;
    }
    return false;
}

bool get_score(const rapidjson::Document& doc, const std::string& field, int& out) {
    const auto it = doc.FindMember(field.c_str());
    if (it == doc.MemberEnd() || it->value.IsNull()) {
        out = 0;
        return true;
    }
    if (it->value.IsInt()) {
        out = it->value.GetInt();
        return true;
    }
    if (it->value.IsDouble()) {
        out = static_cast<int>(it->value.GetDouble());
        return true;
    }
    return false;
}

bool parse_line(const std::string& line, const ArchiveFormat& fmt, Post& post) {
    rapidjson::Document doc;
    doc.Parse(line.c_str(), line.size());
    if (doc.HasParseError() || !doc.IsObject()) return false;

    if (!get_string(doc, fmt.id_field, post.id) || post.id.empty()) return false;
    if (!get_string(doc, fmt.author_field, post.author)) return false;
    if (!get_string(doc, fmt.community_field, post.community) || post.community.empty())
        return false;
    lowercase_inplace(post.community);
    if (!get_timestamp(doc, fmt.created_field, post.created) || post.created <= 0)
        return false;

    std::string url;
    post.domain = get_string(doc, fmt.url_field, url) ? extract_domain(url) : "";
    if (!get_score(doc, fmt.score_field, post.score)) return false;

    const auto removed_it = doc.FindMember(fmt.removed_field.c_str());
    post.removed = removed_it != doc.MemberEnd() && !removed_it->value.IsNull();

    if (!get_string(doc, fmt.title_field, post.title)) post.title.clear();
    return true;
}

}  // namespace

ArchiveFormat ArchiveFormat::load(const std::filesystem::path& mapping_file) {
    std::ifstream in(mapping_file);
    if (!in) throw std::runtime_error("cannot open format mapping: " + mapping_file.string());
    nlohmann::json j = nlohmann::json::parse(in);
    ArchiveFormat fmt;
    fmt.id_field = j.value("id", fmt.id_field);
    fmt.author_field = j.value("author", fmt.author_field);
    fmt.community_field = j.value("community", fmt.community_field);
    fmt.created_field = j.value("created", fmt.created_field);
    fmt.url_field = j.value("url", fmt.url_field);
    fmt.score_field = j.value("score", fmt.score_field);
    fmt.removed_field = j.value("removed", fmt.removed_field);
    fmt.title_field = j.value("title", fmt.title_field);
    return fmt;
}

ParseStats parse_archive(std::istream& in, const ArchiveFormat& format,
                         const PostSink& sink) {
    ParseStats stats;
    std::string line;
    Post post;
    while (std::getline(in, line)) {
        ++stats.lines;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
            ++stats.skipped;
            continue;
        }
        if (parse_line(line, format, post)) {
            ++stats.posts;
            sink(std::move(post));
            post = Post{};
        } else {
            ++stats.skipped;
        }
    }
    if (in.bad()) throw std::runtime_error("archive stream read failure");
    return stats;
}

std::vector<Post> parse_archive(std::istream& in, const ArchiveFormat& format,
                                ParseStats* stats) {
    std::vector<Post> posts;
    const ParseStats s =
        parse_archive(in, format, [&posts](Post&& p) { posts.push_back(std::move(p)); });
    if (stats) *stats = s;
    return posts;
}

std::string serialize_post_line(const Post& post, const ArchiveFormat& format) {
    nlohmann::json j;
    j[format.id_field] = post.id;
    j[format.author_field] = post.author;
    j[format.community_field] = post.community;
    j[format.created_field] = post.created;
    if (!post.domain.empty()) j[format.url_field] = "https://" + post.domain;
    j[format.score_field] = post.score;
    if (post.removed) j[format.removed_field] = "moderator";
    j[format.title_field] = post.title;
    return j.dump();
}

void serialize_posts(std::span<const Post> posts, std::ostream& out,
                     const ArchiveFormat& format) {
    for (const Post& p : posts) {
        out << serialize_post_line(p, format) << '\n';
    }
}

std::string extract_domain(std::string_view url) {
    // Skip "scheme://" when present; also accept protocol-relative "//host".
    std::string_view rest = url;
    const auto scheme_pos = rest.find("://");
    if (scheme_pos != std::string_view::npos) {
        const std::string_view scheme = rest.substr(0, scheme_pos);
        if (scheme.empty() || !std::isalpha(static_cast<unsigned char>(scheme[0])))
            return "";
        for (char c : scheme) {
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' &&
                c != '.')
                return "";
        }
        rest = rest.substr(scheme_pos + 3);
    } else if (rest.size() >= 2 && rest[0] == '/' && rest[1] == '/') {
        rest = rest.substr(2);
    } else {
        return "";
    }

    // Authority ends at the first path/query/fragment delimiter.
    const auto end = rest.find_first_of("/?#");
    std::string_view authority = rest.substr(0, end);
    const auto at = authority.rfind('@');
    if (at != std::string_view::npos) authority = authority.substr(at + 1);

    std::string_view host = authority;
    if (!host.empty() && host.front() == '[') {
        const auto close = host.find(']');
        if (close == std::string_view::npos) return "";
        host = host.substr(1, close - 1);
    } else {
        const auto colon = host.find(':');
        if (colon != std::string_view::npos) host = host.substr(0, colon);
    }
    if (host.empty()) return "";

    std::string out(host);
    lowercase_inplace(out);
    for (unsigned char c : out) {
        if (std::isspace(c) || c == '\\') return "";
    }
    if (out.rfind("www.", 0) == 0 && out.size() > 4) out = out.substr(4);
    return out;
}

}  // namespace context_eval
