#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace context_eval {

// RFC-4180-ish CSV helpers. All numeric formatting goes through fmt_double /
// std::to_string so report files are byte-stable across runs.

std::vector<std::string> split_csv_line(std::string_view line);

// Quotes the field if it contains a comma, quote, or newline.
void append_csv_field(std::string& out, std::string_view field);

std::string join_csv(const std::vector<std::string>& fields);

// Shortest round-trippable decimal representation.
std::string fmt_double(double v);

// Accepts the output of fmt_double; returns false on garbage.
bool parse_double(std::string_view s, double& out);
bool parse_int64(std::string_view s, std::int64_t& out);

}  // namespace context_eval
