#include "scout/text.hpp"

#include <algorithm>
#include <cctype>

namespace scout {

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.emplace_back(text.substr(pos));
            return lines;
        }
        lines.emplace_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

std::size_t count_lines(std::string_view text) {
    if (text.empty()) return 0;
    std::size_t n = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
    if (text.back() != '\n') n += 1;
    return n;
}

std::string slice_lines(std::string_view text, int start_line, int end_line) {
    if (start_line < 1 || end_line < start_line) return {};
    std::size_t begin = 0;
    int line = 1;
    while (line < start_line) {
        std::size_t nl = text.find('\n', begin);
        if (nl == std::string_view::npos) return {};
        begin = nl + 1;
        ++line;
    }
    std::size_t end = begin;
    while (line <= end_line && end < text.size()) {
        std::size_t nl = text.find('\n', end);
        if (nl == std::string_view::npos) {
            end = text.size();
            break;
        }
        end = nl + 1;
        ++line;
    }
    return std::string(text.substr(begin, end - begin));
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string> identifier_words(std::string_view ident) {
    std::vector<std::string> words;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            words.push_back(to_lower(current));
            current.clear();
        }
    };
    for (std::size_t i = 0; i < ident.size(); ++i) {
        char c = ident[i];
        if (c == '_') {
            flush();
            continue;
        }
        bool upper = std::isupper(static_cast<unsigned char>(c));
        if (upper && !current.empty()) {
            char prev = current.back();
            bool prev_lower = std::islower(static_cast<unsigned char>(prev));
            bool prev_digit = std::isdigit(static_cast<unsigned char>(prev));
            // Boundary at lower->Upper and at the end of an acronym run
            // ("HTTPServer" -> http, server).
            bool next_lower = i + 1 < ident.size() &&
                              std::islower(static_cast<unsigned char>(ident[i + 1]));
            if (prev_lower || prev_digit || (std::isupper(static_cast<unsigned char>(prev)) && next_lower)) {
                flush();
            }
        }
        current.push_back(c);
    }
    flush();
    return words;
}

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
}

std::string_view last_component(std::string_view dotted_name) {
    std::size_t dot = dotted_name.rfind('.');
    if (dot == std::string_view::npos) return dotted_name;
    return dotted_name.substr(dot + 1);
}

Result<std::string> glob_to_regex(std::string_view pattern) {
    std::string out;
    out.reserve(pattern.size() * 2);
    std::size_t i = 0;
    const std::size_t n = pattern.size();
    while (i < n) {
        char c = pattern[i];
        if (c == '*') {
            out += ".*";
            ++i;
        } else if (c == '?') {
            out += '.';
            ++i;
        } else if (c == '[') {
            std::size_t j = i + 1;
            if (j < n && (pattern[j] == '!' || pattern[j] == '^')) ++j;
            if (j < n && pattern[j] == ']') ++j;
            while (j < n && pattern[j] != ']') ++j;
            if (j >= n) {
                return make_error(ErrorCode::InvalidQuery,
                                  "malformed glob: unbalanced '[' in \"" + std::string(pattern) + "\"");
            }
            std::string body(pattern.substr(i + 1, j - i - 1));
            out += '[';
            if (!body.empty() && (body[0] == '!' || body[0] == '^')) {
                out += '^';
                body.erase(body.begin());
            }
            for (char bc : body) {
                if (bc == '\\' || bc == '^') out += '\\';
                out += bc;
            }
            out += ']';
            i = j + 1;
        } else {
            static const std::string special = R"(.^$+(){}|\)";
            if (special.find(c) != std::string::npos) out += '\\';
            out += c;
            ++i;
        }
    }
    return out;
}

bool contains_glob_chars(std::string_view s) {
    return s.find_first_of("*?[") != std::string_view::npos;
}

std::string truncate_tail_biased(const std::string& text, std::size_t limit) {
    if (text.size() <= limit) return text;
    std::size_t dropped = text.size() - limit;
    return "[truncated " + std::to_string(dropped) + " characters]\n" + text.substr(dropped);
}

}  // namespace scout
