#include "scout/search_tools.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

#include "scout/similarity.hpp"
#include "scout/text.hpp"

namespace scout {

const char* match_mode_name(MatchMode m) {
    switch (m) {
        case MatchMode::Exact: return "exact";
        case MatchMode::Regex: return "regex";
        case MatchMode::Fuzzy: return "fuzzy";
        case MatchMode::Content: return "content";
    }
    return "exact";
}

namespace {

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string annotate(int line_no, const std::string& text) {
    return std::to_string(line_no) + ": " + trim(text);
}

// Finds the first line in the unit (outside direct-child spans) carrying a
// call token of `name`: identifier followed by optional spaces and '('.
int first_call_line(const CodeUnit& unit, const std::vector<std::pair<int, int>>& child_spans,
                    const std::string& name, const std::vector<std::string>& unit_lines) {
    for (std::size_t i = 0; i < unit_lines.size(); ++i) {
        int abs_line = unit.start_line + static_cast<int>(i);
        bool in_child = false;
        for (const auto& [cs, ce] : child_spans) {
            if (abs_line >= cs && abs_line <= ce) {
                in_child = true;
                break;
            }
        }
        if (in_child) continue;
        const std::string& ln = unit_lines[i];
        std::size_t pos = 0;
        while ((pos = ln.find(name, pos)) != std::string::npos) {
            bool left_ok = pos == 0 || !ident_char(ln[pos - 1]);
            std::size_t after = pos + name.size();
            bool right_ident = after < ln.size() && ident_char(ln[after]);
            std::size_t j = after;
            while (j < ln.size() && (ln[j] == ' ' || ln[j] == '\t')) ++j;
            if (left_ok && !right_ident && j < ln.size() && ln[j] == '(') {
                return abs_line;
            }
            pos = after;
        }
    }
    return 0;
}

// Builds a budgeted preview for a definition hit: signature plus invocation
// context for each adjacency child.  `budget` is the max line count; a value
// of 0 yields an empty (flagged truncated) preview.  In full-code mode the
// whole body is returned and budgets are ignored.
CodePreview definition_preview(const CodeIndex& index, const CodeUnit& unit, int budget,
                               bool full_code) {
    CodePreview p;
    std::vector<std::string> unit_lines = split_lines(unit.text);
    if (full_code) {
        for (std::size_t i = 0; i < unit_lines.size(); ++i) {
            p.lines.push_back(annotate(unit.start_line + static_cast<int>(i), unit_lines[i]));
        }
        return p;
    }
    std::vector<std::string> wanted;
    wanted.push_back(annotate(unit.start_line, unit.signature));
    std::vector<std::pair<int, int>> child_spans;
    for (const ChildEdge& ce : unit.children) {
        if (ce.kind != EdgeKind::Contains) continue;
        const CodeUnit* c = index.find(ce.id);
        if (c) child_spans.emplace_back(c->start_line, c->end_line);
    }
    for (const ChildEdge& ce : unit.children) {
        const CodeUnit* child = index.find(ce.id);
        if (!child) continue;
        if (ce.kind == EdgeKind::Contains) {
            std::vector<std::string> first = split_lines(child->text);
            wanted.push_back(annotate(child->start_line, first.empty() ? child->signature : first[0]));
        } else {
            std::string callee(last_component(child->name));
            int ln = first_call_line(unit, child_spans, callee, unit_lines);
            if (ln > 0) {
                wanted.push_back(annotate(ln, unit_lines[static_cast<std::size_t>(ln - unit.start_line)]));
            } else {
                wanted.push_back(annotate(child->start_line, child->signature));
            }
        }
    }
    if (budget <= 0) {
        p.truncated = !wanted.empty();
        return p;
    }
    if (static_cast<int>(wanted.size()) <= budget) {
        p.lines = std::move(wanted);
        return p;
    }
    int keep = budget - 1;  // reserve a slot for the elision marker
    for (int i = 0; i < keep; ++i) p.lines.push_back(std::move(wanted[static_cast<std::size_t>(i)]));
    p.lines.push_back("... (" + std::to_string(wanted.size() - static_cast<std::size_t>(keep)) +
                      " more context lines)");
    p.truncated = true;
    return p;
}

CodePreview content_preview(const CodeUnit& unit, const std::vector<int>& matched_lines,
                            const std::vector<std::string>& file_lines, int budget,
                            bool full_code) {
    CodePreview p;
    if (full_code) {
        std::vector<std::string> unit_lines = split_lines(unit.text);
        for (std::size_t i = 0; i < unit_lines.size(); ++i) {
            p.lines.push_back(annotate(unit.start_line + static_cast<int>(i), unit_lines[i]));
        }
        return p;
    }
    std::vector<std::string> wanted;
    std::string sig = unit.is_definition()
                          ? unit.signature
                          : "(chunk lines " + std::to_string(unit.start_line) + "-" +
                                std::to_string(unit.end_line) + ")";
    wanted.push_back(annotate(unit.start_line, sig));
    for (int ln : matched_lines) {
        if (ln - 1 >= 0 && ln - 1 < static_cast<int>(file_lines.size())) {
            wanted.push_back(annotate(ln, file_lines[static_cast<std::size_t>(ln - 1)]));
        }
    }
    if (budget <= 0) {
        p.truncated = !wanted.empty();
        return p;
    }
    if (static_cast<int>(wanted.size()) <= budget) {
        p.lines = std::move(wanted);
        return p;
    }
    int keep = budget - 1;
    for (int i = 0; i < keep; ++i) p.lines.push_back(std::move(wanted[static_cast<std::size_t>(i)]));
    p.lines.push_back("... (" + std::to_string(wanted.size() - static_cast<std::size_t>(keep)) +
                      " more matched lines)");
    p.truncated = true;
    return p;
}

void sort_hits(std::vector<SearchHit>& hits) {
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        if (a.score != b.score) return a.score > b.score;
        return std::tie(a.path, a.start_line, a.unit_id) <
               std::tie(b.path, b.start_line, b.unit_id);
    });
}

SearchHit make_hit(const CodeIndex& index, const CodeUnit& unit, MatchMode mode, double score) {
    SearchHit h;
    h.unit_id = unit.id;
    h.path = unit.path;
    h.start_line = unit.start_line;
    h.end_line = unit.end_line;
    h.mode = mode;
    h.score = score;
    h.signature = unit.signature;
    for (const ChildEdge& ce : unit.children) h.children.push_back(ce.id);
    (void)index;
    return h;
}

// Applies per-hit and per-response preview budgets in final rank order.
void attach_definition_previews(const CodeIndex& index, const SearchConfig& cfg,
                                std::vector<SearchHit>& hits) {
    int remaining = cfg.full_code ? 0 : cfg.response_line_budget;
    for (SearchHit& h : hits) {
        const CodeUnit* u = index.find(h.unit_id);
        if (!u) continue;
        int budget = cfg.full_code ? 0 : std::min(cfg.preview_lines_per_hit, remaining);
        h.preview = definition_preview(index, *u, budget, cfg.full_code);
        if (!cfg.full_code) remaining -= static_cast<int>(h.preview.lines.size());
    }
}

std::vector<const CodeUnit*> definition_pool(const CodeIndex& index,
                                             const std::optional<std::string>& file_path) {
    std::vector<const CodeUnit*> pool;
    if (file_path) {
        auto it = index.by_file.find(*file_path);
        if (it == index.by_file.end()) return pool;
        for (const std::string& id : it->second) {
            const CodeUnit& u = index.units.at(id);
            if (u.is_definition()) pool.push_back(&u);
        }
        return pool;
    }
    for (const auto& [_, u] : index.units) {
        if (u.is_definition()) pool.push_back(&u);
    }
    return pool;
}

}  // namespace

Result<FindFileResponse> find_file(const CodeIndex& index, const SearchConfig& cfg,
                                   const std::string& file_name,
                                   const std::optional<std::string>& dir_path) {
    if (file_name.empty()) {
        return make_error(ErrorCode::InvalidQuery, "find_file requires a file name or glob");
    }
    std::string dir_prefix;
    if (dir_path && !dir_path->empty()) {
        dir_prefix = *dir_path;
        while (starts_with(dir_prefix, "./")) dir_prefix = dir_prefix.substr(2);
        if (!dir_prefix.empty() && dir_prefix.back() != '/') dir_prefix += '/';
    }

    bool use_glob = contains_glob_chars(file_name);
    std::regex glob_re;
    if (use_glob) {
        auto pattern = glob_to_regex(file_name);
        if (!pattern.ok()) return pattern.error();
        glob_re = std::regex(pattern.value());
    }

    FindFileResponse resp;
    std::size_t total = 0;
    for (const std::string& path : index.files()) {
        if (!dir_prefix.empty() && !starts_with(path, dir_prefix)) continue;
        bool matched;
        if (use_glob) {
            matched = std::regex_match(path, glob_re);
        } else {
            std::size_t slash = path.rfind('/');
            std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
            matched = base == file_name;
        }
        if (!matched) continue;
        ++total;
        if (static_cast<int>(resp.matches.size()) >= cfg.max_hits) continue;
        auto sk = file_skeleton(index, path);
        if (sk.ok()) resp.matches.push_back({path, std::move(sk).take()});
    }
    if (total > resp.matches.size()) {
        resp.notes.push_back("showing " + std::to_string(resp.matches.size()) + " of " +
                             std::to_string(total) + " matching files");
    }
    return resp;
}

Result<SearchResponse> find_code_def(const CodeIndex& index, const SearchConfig& cfg,
                                     const std::string& definition_name,
                                     const std::optional<std::string>& file_path) {
    if (definition_name.empty()) {
        return make_error(ErrorCode::InvalidQuery, "find_code_def requires a definition name");
    }
    SearchResponse resp;
    std::vector<const CodeUnit*> pool = definition_pool(index, file_path);
    if (file_path && pool.empty() && !index.has_file(*file_path)) {
        resp.notes.push_back("file not in index: " + *file_path);
        return resp;
    }

    // Stage 1: exact name (full dotted name or its last component).
    std::vector<SearchHit> hits;
    for (const CodeUnit* u : pool) {
        if (u->name == definition_name || last_component(u->name) == definition_name) {
            hits.push_back(make_hit(index, *u, MatchMode::Exact, 1.0));
        }
    }

    // Stage 2: the query as a regular expression over definition names.
    if (hits.empty()) {
        bool regex_ok = true;
        std::regex re;
        try {
            re = std::regex(definition_name);
        } catch (const std::regex_error&) {
            regex_ok = false;
            resp.notes.push_back("query is not a valid regex; using fuzzy ranking");
        }
        if (regex_ok) {
            for (const CodeUnit* u : pool) {
                if (std::regex_match(u->name, re) ||
                    std::regex_match(std::string(last_component(u->name)), re)) {
                    hits.push_back(make_hit(index, *u, MatchMode::Regex, 1.0));
                }
            }
        }
    }

    // Stage 3: fuzzy ranking over every definition name.
    if (hits.empty()) {
        for (const CodeUnit* u : pool) {
            auto s1 = fuzzy_score(definition_name, u->name, cfg.fuzzy);
            auto s2 = fuzzy_score(definition_name, std::string(last_component(u->name)), cfg.fuzzy);
            double score = 0.0;
            if (s1.ok()) score = s1.value();
            if (s2.ok()) score = std::max(score, s2.value());
            hits.push_back(make_hit(index, *u, MatchMode::Fuzzy, score));
        }
    }

    sort_hits(hits);
    if (static_cast<int>(hits.size()) > cfg.max_hits) {
        resp.notes.push_back("showing " + std::to_string(cfg.max_hits) + " of " +
                             std::to_string(hits.size()) + " candidates");
        hits.resize(static_cast<std::size_t>(cfg.max_hits));
    }
    attach_definition_previews(index, cfg, hits);
    resp.hits = std::move(hits);
    return resp;
}

Result<SearchResponse> find_code_content(const CodeIndex& index, const SearchConfig& cfg,
                                         const std::string& content,
                                         const std::optional<std::string>& file_path,
                                         std::optional<int> start_line,
                                         std::optional<int> end_line) {
    if (content.empty()) {
        return make_error(ErrorCode::InvalidQuery, "find_code_content requires a snippet");
    }
    if ((start_line || end_line) && !file_path) {
        return make_error(ErrorCode::InvalidQuery, "a line span requires file_path");
    }
    SearchResponse resp;
    std::vector<std::string> files;
    if (file_path) {
        if (!index.has_file(*file_path)) {
            resp.notes.push_back("file not in index: " + *file_path);
            return resp;
        }
        files.push_back(*file_path);
    } else {
        files = index.files();
    }

    bool variant_mode = is_identifier(content);
    std::vector<std::string> query_words = identifier_words(content);

    struct UnitMatches {
        const CodeUnit* unit;
        std::vector<int> lines;
    };
    std::map<std::string, UnitMatches> per_unit;
    std::map<std::string, std::vector<std::string>> file_lines_cache;

    for (const std::string& path : files) {
        std::string text = index.file_text(path);
        std::vector<std::string> lines = split_lines(text);
        int lo = 1, hi = static_cast<int>(lines.size());
        if (start_line || end_line) {
            lo = start_line.value_or(1);
            hi = end_line.value_or(hi);
            if (lo < 1 || hi > static_cast<int>(lines.size()) || lo > hi) {
                return make_error(ErrorCode::InvalidQuery,
                                  "line span " + std::to_string(lo) + "-" + std::to_string(hi) +
                                      " outside " + path);
            }
        }
        std::vector<int> matched;
        if (variant_mode) {
            for (int ln = lo; ln <= hi; ++ln) {
                const std::string& l = lines[static_cast<std::size_t>(ln - 1)];
                std::size_t i = 0;
                while (i < l.size()) {
                    if (!ident_char(l[i]) || std::isdigit(static_cast<unsigned char>(l[i]))) {
                        ++i;
                        continue;
                    }
                    std::size_t a = i;
                    while (i < l.size() && ident_char(l[i])) ++i;
                    std::string token = l.substr(a, i - a);
                    if (token == content || identifier_words(token) == query_words) {
                        matched.push_back(ln);
                        break;
                    }
                }
            }
        } else if (content.find('\n') != std::string::npos) {
            std::size_t pos = 0;
            while ((pos = text.find(content, pos)) != std::string::npos) {
                int first = 1 + static_cast<int>(std::count(text.begin(),
                                                            text.begin() + static_cast<long>(pos), '\n'));
                int span = static_cast<int>(std::count(content.begin(), content.end(), '\n'));
                for (int ln = first; ln <= first + span; ++ln) {
                    if (ln >= lo && ln <= hi) matched.push_back(ln);
                }
                pos += 1;
            }
            std::sort(matched.begin(), matched.end());
            matched.erase(std::unique(matched.begin(), matched.end()), matched.end());
        } else {
            for (int ln = lo; ln <= hi; ++ln) {
                if (lines[static_cast<std::size_t>(ln - 1)].find(content) != std::string::npos) {
                    matched.push_back(ln);
                }
            }
        }
        if (matched.empty()) continue;
        file_lines_cache[path] = lines;

        // Assign each matched line to its smallest containing unit; a
        // definition wins over a chunk on an exact span tie.
        for (int ln : matched) {
            const CodeUnit* best = nullptr;
            for (const std::string& id : index.by_file.at(path)) {
                const CodeUnit& u = index.units.at(id);
                if (ln < u.start_line || ln > u.end_line) continue;
                if (!best) {
                    best = &u;
                    continue;
                }
                int bs = best->end_line - best->start_line;
                int us = u.end_line - u.start_line;
                if (us < bs) {
                    best = &u;
                } else if (us == bs) {
                    if (best->kind == UnitKind::Chunk && u.is_definition()) best = &u;
                }
            }
            if (!best) continue;
            auto& um = per_unit[best->id];
            um.unit = best;
            um.lines.push_back(ln);
        }
    }

    std::vector<SearchHit> hits;
    for (auto& [id, um] : per_unit) {
        SearchHit h = make_hit(index, *um.unit, MatchMode::Content, 1.0);
        std::sort(um.lines.begin(), um.lines.end());
        um.lines.erase(std::unique(um.lines.begin(), um.lines.end()), um.lines.end());
        hits.push_back(std::move(h));
    }
    sort_hits(hits);
    if (static_cast<int>(hits.size()) > cfg.max_hits) {
        resp.notes.push_back("showing " + std::to_string(cfg.max_hits) + " of " +
                             std::to_string(hits.size()) + " matching units");
        hits.resize(static_cast<std::size_t>(cfg.max_hits));
    }
    int remaining = cfg.full_code ? 0 : cfg.response_line_budget;
    for (SearchHit& h : hits) {
        const UnitMatches& um = per_unit.at(h.unit_id);
        int budget = cfg.full_code ? 0 : std::min(cfg.preview_lines_per_hit, remaining);
        h.preview = content_preview(*um.unit, um.lines, file_lines_cache.at(um.unit->path), budget,
                                    cfg.full_code);
        if (!cfg.full_code) remaining -= static_cast<int>(h.preview.lines.size());
    }
    resp.hits = std::move(hits);
    return resp;
}

Result<SearchResponse> find_child_unit(const CodeIndex& index, const SearchConfig& cfg,
                                       const std::string& definition_name,
                                       const std::string& file_path) {
    if (definition_name.empty() || file_path.empty()) {
        return make_error(ErrorCode::InvalidQuery,
                          "find_child_unit requires definition_name and file_path");
    }
    std::string id = file_path + ":" + definition_name;
    const CodeUnit* unit = index.find(id);
    if (unit && !unit->is_definition()) {
        return make_error(ErrorCode::NotFound,
                          id + " is a chunk; this tool addresses definitions only");
    }
    if (!unit) {
        // Nearest-name suggestions, same file preferred when it exists.
        std::optional<std::string> scope;
        if (index.has_file(file_path)) scope = file_path;
        std::vector<const CodeUnit*> pool = definition_pool(index, scope);
        struct Scored {
            double score;
            const CodeUnit* u;
        };
        std::vector<Scored> scored;
        for (const CodeUnit* u : pool) {
            auto s1 = fuzzy_score(definition_name, u->name, FuzzyConfig{});
            auto s2 = fuzzy_score(definition_name, std::string(last_component(u->name)), FuzzyConfig{});
            double s = 0.0;
            if (s1.ok()) s = s1.value();
            if (s2.ok()) s = std::max(s, s2.value());
            scored.push_back({s, u});
        }
        std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
            if (a.score != b.score) return a.score > b.score;
            return std::tie(a.u->path, a.u->start_line, a.u->id) <
                   std::tie(b.u->path, b.u->start_line, b.u->id);
        });
        std::string suggestions;
        for (std::size_t i = 0; i < scored.size() && i < 3; ++i) {
            if (i) suggestions += ", ";
            suggestions += scored[i].u->path + ":" + scored[i].u->name;
        }
        std::string msg = "no definition '" + definition_name + "' in " + file_path;
        if (!suggestions.empty()) msg += "; nearest: " + suggestions;
        return make_error(ErrorCode::NotFound, msg);
    }
    SearchResponse resp;
    std::vector<SearchHit> hits{make_hit(index, *unit, MatchMode::Exact, 1.0)};
    attach_definition_previews(index, cfg, hits);
    resp.hits = std::move(hits);
    return resp;
}

std::string render_response(const SearchResponse& resp) {
    std::ostringstream out;
    if (resp.hits.empty()) {
        out << "No results.\n";
    }
    for (std::size_t i = 0; i < resp.hits.size(); ++i) {
        const SearchHit& h = resp.hits[i];
        char score[32];
        std::snprintf(score, sizeof score, "%.4f", h.score);
        out << (i + 1) << ". " << h.unit_id << "  [" << match_mode_name(h.mode) << "] score="
            << score << " lines " << h.start_line << "-" << h.end_line << "\n";
        for (const std::string& l : h.preview.lines) {
            out << "     " << l << "\n";
        }
        if (!h.children.empty()) {
            out << "     children: ";
            for (std::size_t c = 0; c < h.children.size(); ++c) {
                if (c) out << ", ";
                out << h.children[c];
            }
            out << "\n";
        }
    }
    for (const std::string& n : resp.notes) out << "note: " << n << "\n";
    return out.str();
}

std::string render_find_file(const FindFileResponse& resp) {
    std::ostringstream out;
    if (resp.matches.empty()) out << "No matching files.\n";
    for (const FileMatch& m : resp.matches) {
        out << m.path << "\n";
        if (m.skeleton.entries.empty()) {
            out << "  (no definitions)\n";
            continue;
        }
        for (const SkeletonEntry& e : m.skeleton.entries) {
            out << "  " << e.start_line << "-" << e.end_line << " " << unit_kind_name(e.kind)
                << " " << e.name << ": " << e.signature << "\n";
        }
    }
    for (const std::string& n : resp.notes) out << "note: " << n << "\n";
    return out.str();
}

int preview_line_total(const SearchResponse& resp) {
    int n = 0;
    for (const SearchHit& h : resp.hits) n += static_cast<int>(h.preview.lines.size());
    return n;
}

}  // namespace scout
