#include "scout/code_index.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "scout/python_parser.hpp"
#include "scout/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace scout {

const char* unit_kind_name(UnitKind k) {
    switch (k) {
        case UnitKind::Function: return "function";
        case UnitKind::Class: return "class";
        case UnitKind::Chunk: return "chunk";
    }
    return "chunk";
}

const char* edge_kind_name(EdgeKind k) {
    return k == EdgeKind::Contains ? "contains" : "invokes";
}

const CodeUnit* CodeIndex::find(const std::string& id) const {
    auto it = units.find(id);
    return it == units.end() ? nullptr : &it->second;
}

std::vector<std::string> CodeIndex::files() const {
    std::vector<std::string> out;
    out.reserve(by_file.size());
    for (const auto& [path, _] : by_file) out.push_back(path);
    return out;
}

int CodeIndex::file_line_count(const std::string& path) const {
    auto it = by_file.find(path);
    if (it == by_file.end()) return 0;
    int n = 0;
    for (const std::string& id : it->second) {
        auto u = units.find(id);
        if (u != units.end()) n = std::max(n, u->second.end_line);
    }
    return n;
}

std::string CodeIndex::file_text(const std::string& path) const {
    auto it = by_file.find(path);
    if (it == by_file.end()) return {};
    // Top-level units (chunks + outermost definitions) tile the file exactly;
    // nested definitions are sub-slices of their parents and must be skipped.
    std::string out;
    int covered_to = 0;
    for (const std::string& id : it->second) {
        auto u = units.find(id);
        if (u == units.end()) continue;
        if (u->second.start_line <= covered_to) continue;  // nested in a previous unit
        out += u->second.text;
        covered_to = u->second.end_line;
    }
    return out;
}

namespace {

// --- unit construction ---------------------------------------------------

std::vector<CodeUnit> defs_to_units(const std::string& path, const std::string& source,
                                    const PyParse& parse) {
    std::vector<CodeUnit> units;
    units.reserve(parse.defs.size());
    std::unordered_map<std::string, int> seen;  // qualified name -> occurrences
    std::vector<std::string> ids(parse.defs.size());
    for (std::size_t i = 0; i < parse.defs.size(); ++i) {
        const PyDef& d = parse.defs[i];
        int n = ++seen[d.qualified];
        std::string id = path + ":" + d.qualified;
        if (n > 1) id += "#" + std::to_string(n);
        ids[i] = id;

        CodeUnit u;
        u.id = std::move(id);
        u.kind = d.kind == PyDefKind::Class ? UnitKind::Class : UnitKind::Function;
        u.name = d.qualified;
        u.path = path;
        u.start_line = d.start_line;
        u.end_line = d.end_line;
        u.text = slice_lines(source, d.start_line, d.end_line);
        u.signature = d.signature;
        units.push_back(std::move(u));
    }
    for (std::size_t i = 0; i < parse.defs.size(); ++i) {
        for (int child : parse.defs[i].children) {
            units[i].children.push_back({ids[static_cast<std::size_t>(child)], EdgeKind::Contains});
        }
    }
    return units;
}

void append_chunks(std::vector<CodeUnit>& units, const std::string& path,
                   const std::string& source, int line_count, int chunk_lines) {
    if (line_count <= 0) return;
    std::vector<bool> covered(static_cast<std::size_t>(line_count) + 1, false);
    for (const CodeUnit& u : units) {
        for (int ln = u.start_line; ln <= u.end_line && ln <= line_count; ++ln) {
            covered[static_cast<std::size_t>(ln)] = true;
        }
    }
    int chunk_no = 0;
    int ln = 1;
    while (ln <= line_count) {
        if (covered[static_cast<std::size_t>(ln)]) {
            ++ln;
            continue;
        }
        int run_end = ln;
        while (run_end + 1 <= line_count && !covered[static_cast<std::size_t>(run_end + 1)]) {
            ++run_end;
        }
        for (int s = ln; s <= run_end; s += chunk_lines) {
            int e = std::min(run_end, s + chunk_lines - 1);
            CodeUnit c;
            c.id = path + ":chunk_" + std::to_string(++chunk_no);
            c.kind = UnitKind::Chunk;
            c.path = path;
            c.start_line = s;
            c.end_line = e;
            c.text = slice_lines(source, s, e);
            units.push_back(std::move(c));
        }
        ln = run_end + 1;
    }
}

// --- call scanning --------------------------------------------------------

bool is_python_keyword(std::string_view w) {
    static const std::unordered_set<std::string_view> kw = {
        "False",  "None",   "True",    "and",   "as",   "assert",   "async",
        "await",  "break",  "class",   "continue", "def", "del",    "elif",
        "else",   "except", "finally", "for",   "from", "global",   "if",
        "import", "in",     "is",      "lambda", "nonlocal", "not", "or",
        "pass",   "raise",  "return",  "try",   "while", "with",    "yield"};
    return kw.count(w) != 0;
}

struct CallSite {
    std::string name;  // last component of the callee
    int line = 0;      // 1-based
    int col = 0;       // 0-based
};

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// True when the identifier at [a, b) is preceded by the `def` or `class`
// keyword (a definition header, not a call).
bool preceded_by_def_keyword(const std::string& line, std::size_t a) {
    std::size_t p = a;
    while (p > 0 && (line[p - 1] == ' ' || line[p - 1] == '\t')) --p;
    auto ends_with_word = [&](std::string_view word) {
        if (p < word.size()) return false;
        if (line.compare(p - word.size(), word.size(), word) != 0) return false;
        std::size_t before = p - word.size();
        return before == 0 || !ident_char(line[before - 1]);
    };
    return ends_with_word("def") || ends_with_word("class");
}

// Scans one sanitized line for identifier-followed-by-'(' call tokens.
void scan_line_calls(const std::string& line, int line_no, std::vector<CallSite>& out) {
    std::size_t i = 0;
    const std::size_t n = line.size();
    while (i < n) {
        if (!ident_char(line[i]) ||
            std::isdigit(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t a = i;
        while (i < n && ident_char(line[i])) ++i;
        std::size_t b = i;
        std::size_t j = b;
        while (j < n && (line[j] == ' ' || line[j] == '\t')) ++j;
        if (j < n && line[j] == '(') {
            std::string_view word(line.data() + a, b - a);
            if (!is_python_keyword(word) && !preceded_by_def_keyword(line, a)) {
                out.push_back({std::string(word), line_no, static_cast<int>(a)});
            }
        }
    }
}

struct ParsedFile {
    std::string path;
    std::string source;
    PyParse parse;
};

// Resolves call sites to invokes edges across the whole index.
void populate_invokes(CodeIndex& index, const std::vector<ParsedFile>& files, int max_candidates) {
    // Definition lookup tables by last name component, repo-wide and per file.
    struct Target {
        std::string id;
        std::string path;
        int start = 0;
    };
    std::unordered_map<std::string, std::vector<Target>> repo_wide;
    std::unordered_map<std::string, std::vector<Target>> per_file;  // key: path + '\n' + name
    for (const auto& [id, u] : index.units) {
        if (!u.is_definition()) continue;
        std::string last(last_component(u.name));
        repo_wide[last].push_back({id, u.path, u.start_line});
        per_file[u.path + "\n" + last].push_back({id, u.path, u.start_line});
    }
    auto by_pos = [](const Target& a, const Target& b) {
        return std::tie(a.path, a.start, a.id) < std::tie(b.path, b.start, b.id);
    };
    for (auto& [_, v] : repo_wide) std::sort(v.begin(), v.end(), by_pos);
    for (auto& [_, v] : per_file) std::sort(v.begin(), v.end(), by_pos);

    for (const ParsedFile& pf : files) {
        if (pf.parse.failed) continue;
        auto file_it = index.by_file.find(pf.path);
        if (file_it == index.by_file.end()) continue;
        for (const std::string& uid : file_it->second) {
            CodeUnit& unit = index.units.at(uid);
            if (!unit.is_definition()) continue;  // chunks carry no outgoing invokes

            // Lines belonging to this unit but not to a direct child span.
            std::vector<std::pair<int, int>> child_spans;
            for (const ChildEdge& ce : unit.children) {
                const CodeUnit& c = index.units.at(ce.id);
                child_spans.emplace_back(c.start_line, c.end_line);
            }
            std::vector<CallSite> calls;
            for (int ln = unit.start_line; ln <= unit.end_line; ++ln) {
                bool in_child = false;
                for (const auto& [cs, ce] : child_spans) {
                    if (ln >= cs && ln <= ce) {
                        in_child = true;
                        break;
                    }
                }
                if (in_child) continue;
                if (ln - 1 < static_cast<int>(pf.parse.sanitized.size())) {
                    scan_line_calls(pf.parse.sanitized[static_cast<std::size_t>(ln - 1)], ln, calls);
                }
            }

            // First evidence position per callee name.
            std::map<std::string, std::pair<int, int>> first_seen;
            for (const CallSite& c : calls) {
                auto it = first_seen.find(c.name);
                if (it == first_seen.end()) first_seen[c.name] = {c.line, c.col};
            }

            struct Pending {
                int line;
                int col;
                std::string id;
            };
            std::vector<Pending> pending;
            std::set<std::string> existing;
            for (const ChildEdge& ce : unit.children) existing.insert(ce.id);

            for (const auto& [name, pos] : first_seen) {
                const std::vector<Target>* cands = nullptr;
                auto pf_it = per_file.find(pf.path + "\n" + name);
                // Same-file definitions win; otherwise fall back repo-wide.
                std::vector<Target> filtered;
                if (pf_it != per_file.end()) {
                    for (const Target& t : pf_it->second) {
                        if (t.id != unit.id) filtered.push_back(t);
                    }
                }
                if (filtered.empty()) {
                    auto rw_it = repo_wide.find(name);
                    if (rw_it != repo_wide.end()) {
                        for (const Target& t : rw_it->second) {
                            if (t.id != unit.id) filtered.push_back(t);
                        }
                    }
                }
                cands = &filtered;
                int taken = 0;
                for (const Target& t : *cands) {
                    if (taken >= max_candidates) break;
                    ++taken;
                    if (existing.count(t.id)) continue;  // contains edge wins
                    existing.insert(t.id);
                    pending.push_back({pos.first, pos.second, t.id});
                }
            }

            // Merge: contains children keep their source position (start line),
            // invokes children sort by first call evidence.
            struct Ordered {
                int line;
                int col;
                ChildEdge edge;
            };
            std::vector<Ordered> merged;
            for (const ChildEdge& ce : unit.children) {
                const CodeUnit& c = index.units.at(ce.id);
                merged.push_back({c.start_line, 0, ce});
            }
            for (const Pending& p : pending) {
                merged.push_back({p.line, p.col, {p.id, EdgeKind::Invokes}});
            }
            std::sort(merged.begin(), merged.end(), [](const Ordered& a, const Ordered& b) {
                return std::tie(a.line, a.col, a.edge.id) < std::tie(b.line, b.col, b.edge.id);
            });
            unit.children.clear();
            for (Ordered& o : merged) unit.children.push_back(std::move(o.edge));
        }
    }
}

// --- repository walk -------------------------------------------------------

Result<std::vector<std::string>> collect_source_files(const fs::path& root,
                                                      const IndexConfig& cfg) {
    std::vector<std::string> rel_paths;
    std::vector<fs::path> dirs{root};
    std::set<std::string> ignored(cfg.ignore_dirs.begin(), cfg.ignore_dirs.end());
    while (!dirs.empty()) {
        fs::path dir = dirs.back();
        dirs.pop_back();
        std::error_code ec;
        std::vector<fs::directory_entry> entries;
        for (fs::directory_iterator it(dir, fs::directory_options::skip_permission_denied, ec), end;
             it != end; it.increment(ec)) {
            if (ec) break;
            entries.push_back(*it);
        }
        for (const fs::directory_entry& e : entries) {
            std::error_code sec;
            if (e.is_symlink(sec)) continue;
            if (e.is_directory(sec)) {
                if (!ignored.count(e.path().filename().string())) dirs.push_back(e.path());
            } else if (e.is_regular_file(sec)) {
                std::string ext = e.path().extension().string();
                if (cfg.languages.count(ext)) {
                    rel_paths.push_back(fs::relative(e.path(), root).generic_string());
                }
            }
        }
    }
    std::sort(rel_paths.begin(), rel_paths.end());
    return rel_paths;
}

Result<std::string> read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return make_error(ErrorCode::Io, "cannot read " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

Result<std::vector<CodeUnit>> extract_definitions(const std::string& path,
                                                  const std::string& source,
                                                  const std::string& grammar) {
    if (grammar != "python") {
        return make_error(ErrorCode::UnsupportedLanguage, "no grammar registered as '" + grammar + "'");
    }
    PyParse parse = parse_python(source);
    if (parse.failed) {
        return make_error(ErrorCode::Parse, path + ": " + parse.failure);
    }
    return defs_to_units(path, source, parse);
}

Result<CodeIndex> index_repository(const std::string& root, const IndexConfig& config) {
    fs::path rootp(root);
    std::error_code ec;
    if (!fs::is_directory(rootp, ec) || ec) {
        return make_error(ErrorCode::Io, "index root is not a readable directory: " + root);
    }
    auto files = collect_source_files(rootp, config);
    if (!files.ok()) return files.error();

    std::vector<ParsedFile> parsed(files.value().size());
    for (std::size_t i = 0; i < files.value().size(); ++i) parsed[i].path = files.value()[i];

    auto parse_one = [&](std::size_t i) {
        auto text = read_file(rootp / parsed[i].path);
        if (!text.ok()) {
            parsed[i].parse.failed = true;
            parsed[i].parse.failure = "unreadable file";
            return;
        }
        parsed[i].source = std::move(text).take();
        parsed[i].parse = parse_python(parsed[i].source);
    };

    int threads = std::max(1, config.parse_threads);
    if (threads == 1 || parsed.size() < 2) {
        for (std::size_t i = 0; i < parsed.size(); ++i) parse_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        int count = std::min<int>(threads, static_cast<int>(parsed.size()));
        pool.reserve(static_cast<std::size_t>(count));
        for (int t = 0; t < count; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < parsed.size(); i = next.fetch_add(1)) {
                    parse_one(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    CodeIndex index;
    index.root = rootp.generic_string();
    index.languages = config.languages;
    for (ParsedFile& pf : parsed) {
        std::vector<CodeUnit> units;
        if (pf.parse.failed) {
            index.diagnostics.push_back({pf.path, pf.parse.failure});
            pf.parse.defs.clear();
        } else {
            units = defs_to_units(pf.path, pf.source, pf.parse);
        }
        int line_count = static_cast<int>(count_lines(pf.source));
        append_chunks(units, pf.path, pf.source, line_count, config.chunk_lines);
        if (units.empty()) continue;  // zero-line file: nothing to cover
        std::sort(units.begin(), units.end(), [](const CodeUnit& a, const CodeUnit& b) {
            return std::tie(a.start_line, a.id) < std::tie(b.start_line, b.id);
        });
        auto& order = index.by_file[pf.path];
        for (CodeUnit& u : units) {
            order.push_back(u.id);
            index.units.emplace(u.id, std::move(u));
        }
    }
    populate_invokes(index, parsed, config.max_invoke_candidates);
    return index;
}

Result<FileSkeleton> file_skeleton(const CodeIndex& index, const std::string& path) {
    auto it = index.by_file.find(path);
    if (it == index.by_file.end()) {
        return make_error(ErrorCode::NotFound, "file not in index: " + path);
    }
    FileSkeleton sk;
    sk.path = path;
    for (const std::string& id : it->second) {
        const CodeUnit& u = index.units.at(id);
        if (!u.is_definition()) continue;
        sk.entries.push_back({u.name, u.kind, u.start_line, u.end_line, u.signature});
    }
    return sk;
}

Result<CodeUnit> get_unit(const CodeIndex& index, const std::string& id) {
    const CodeUnit* u = index.find(id);
    if (!u) return make_error(ErrorCode::NotFound, "no unit with id: " + id);
    return *u;
}

std::string serialize_index(const CodeIndex& index) {
    json units = json::array();
    std::vector<const CodeUnit*> ordered;
    ordered.reserve(index.units.size());
    for (const auto& [_, u] : index.units) ordered.push_back(&u);
    std::sort(ordered.begin(), ordered.end(), [](const CodeUnit* a, const CodeUnit* b) {
        return std::tie(a->path, a->start_line, a->id) < std::tie(b->path, b->start_line, b->id);
    });
    for (const CodeUnit* u : ordered) {
        json children = json::array();
        for (const ChildEdge& c : u->children) {
            children.push_back({{"edge", edge_kind_name(c.kind)}, {"id", c.id}});
        }
        units.push_back({{"id", u->id},
                         {"kind", unit_kind_name(u->kind)},
                         {"name", u->name},
                         {"path", u->path},
                         {"start_line", u->start_line},
                         {"end_line", u->end_line},
                         {"signature", u->signature},
                         {"text", u->text},
                         {"children", children}});
    }
    json diags = json::array();
    std::vector<Diagnostic> d = index.diagnostics;
    std::sort(d.begin(), d.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.path, a.message) < std::tie(b.path, b.message);
    });
    for (const Diagnostic& diag : d) {
        diags.push_back({{"path", diag.path}, {"message", diag.message}});
    }
    json doc{{"version", CodeIndex::kVersion},
             {"root", index.root},
             {"units", units},
             {"diagnostics", diags}};
    return doc.dump(2) + "\n";
}

Result<CodeIndex> deserialize_index(const std::string& json_text) {
    json doc = json::parse(json_text, nullptr, false);
    if (doc.is_discarded()) return make_error(ErrorCode::Parse, "index file is not valid JSON");
    try {
        if (!doc.is_object() || !doc.contains("version")) {
            return make_error(ErrorCode::Schema, "index document missing version");
        }
        if (doc.at("version").get<int>() != CodeIndex::kVersion) {
            return make_error(ErrorCode::Schema,
                              "unsupported index version " + doc.at("version").dump());
        }
        CodeIndex index;
        index.root = doc.at("root").get<std::string>();
        for (const json& ju : doc.at("units")) {
            CodeUnit u;
            u.id = ju.at("id").get<std::string>();
            std::string kind = ju.at("kind").get<std::string>();
            if (kind == "function") {
                u.kind = UnitKind::Function;
            } else if (kind == "class") {
                u.kind = UnitKind::Class;
            } else if (kind == "chunk") {
                u.kind = UnitKind::Chunk;
            } else {
                return make_error(ErrorCode::Schema, "unknown unit kind: " + kind);
            }
            u.name = ju.at("name").get<std::string>();
            u.path = ju.at("path").get<std::string>();
            u.start_line = ju.at("start_line").get<int>();
            u.end_line = ju.at("end_line").get<int>();
            u.signature = ju.at("signature").get<std::string>();
            u.text = ju.at("text").get<std::string>();
            for (const json& jc : ju.at("children")) {
                std::string edge = jc.at("edge").get<std::string>();
                if (edge != "contains" && edge != "invokes") {
                    return make_error(ErrorCode::Schema, "unknown edge kind: " + edge);
                }
                u.children.push_back({jc.at("id").get<std::string>(),
                                      edge == "contains" ? EdgeKind::Contains : EdgeKind::Invokes});
            }
            if (u.start_line < 1 || u.end_line < u.start_line) {
                return make_error(ErrorCode::Schema, "invalid span on unit " + u.id);
            }
            index.by_file[u.path].push_back(u.id);
            index.units.emplace(u.id, std::move(u));
        }
        for (auto& [path, ids] : index.by_file) {
            std::sort(ids.begin(), ids.end(), [&](const std::string& a, const std::string& b) {
                const CodeUnit& ua = index.units.at(a);
                const CodeUnit& ub = index.units.at(b);
                return std::tie(ua.start_line, ua.id) < std::tie(ub.start_line, ub.id);
            });
        }
        for (const auto& [id, u] : index.units) {
            for (const ChildEdge& c : u.children) {
                if (!index.units.count(c.id)) {
                    return make_error(ErrorCode::Schema,
                                      "unit " + id + " references unknown child " + c.id);
                }
            }
        }
        for (const json& jd : doc.at("diagnostics")) {
            index.diagnostics.push_back(
                {jd.at("path").get<std::string>(), jd.at("message").get<std::string>()});
        }
        return index;
    } catch (const json::exception& e) {
        return make_error(ErrorCode::Schema, std::string("malformed index document: ") + e.what());
    }
}

Result<CodeIndex> load_index_file(const std::string& path) {
    auto text = read_file(path);
    if (!text.ok()) return text.error();
    return deserialize_index(text.value());
}

Result<void> save_index_file(const CodeIndex& index, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return make_error(ErrorCode::Io, "cannot write " + path);
    out << serialize_index(index);
    out.close();
    if (!out) return make_error(ErrorCode::Io, "write failed for " + path);
    return {};
}

}  // namespace scout
