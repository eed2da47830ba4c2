#pragma once
// Small text helpers shared by the indexer and search tools: line splitting
// that agrees with the unit-span arithmetic, identifier word splitting for
// case-variant matching, and glob translation.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scout/result.hpp"

namespace scout {

// Lines without their terminators. A trailing newline does not create an
// extra empty line: "a\nb\n" and "a\nb" both split to {"a", "b"}.
std::vector<std::string> split_lines(std::string_view text);

std::size_t count_lines(std::string_view text);

// Exact byte slice covering 1-based inclusive [start_line, end_line],
// terminators included where present in the source.
std::string slice_lines(std::string_view text, int start_line, int end_line);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string trim(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);

std::string to_lower(std::string_view s);

// Splits an identifier on underscores and camel-case boundaries into
// lowercase words: "maxRetryCount" and "MAX_RETRY_COUNT" both yield
// {"max", "retry", "count"}.
std::vector<std::string> identifier_words(std::string_view ident);

bool is_identifier(std::string_view s);

// Last dotted component: "Config.get" -> "get".
std::string_view last_component(std::string_view dotted_name);

// fnmatch-style glob ('*', '?', '[...]') translated to a regex string.
// '*' crosses path separators. Unbalanced '[' is a malformed pattern.
Result<std::string> glob_to_regex(std::string_view pattern);

bool contains_glob_chars(std::string_view s);

// Tail-biased truncation: keeps the last `limit` characters and prefixes a
// marker stating how much was dropped.
std::string truncate_tail_biased(const std::string& text, std::size_t limit);

}  // namespace scout
