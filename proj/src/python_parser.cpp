#include "scout/python_parser.hpp"

#include <cctype>
#include <unordered_set>

#include "scout/text.hpp"

namespace scout {
namespace {

// Lexer state carried across physical lines.
struct LexState {
    char triple_quote = 0;     // quote char when inside a triple-quoted string
    char short_quote = 0;      // quote char when a short string spills over (backslash at EOL)
    int depth = 0;             // bracket nesting
    bool backslash_cont = false;
};

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Blanks string literals and comments in one physical line, updating state.
// Returns false on a lexical error (unbalanced closing bracket).
bool sanitize_line(const std::string& line, LexState& st, std::string& out, std::string& err) {
    out.assign(line.size(), ' ');
    st.backslash_cont = false;
    std::size_t i = 0;
    const std::size_t n = line.size();

    while (i < n) {
        if (st.triple_quote) {
            char q = st.triple_quote;
            if (line[i] == '\\') {
                i += 2;
            } else if (line[i] == q && i + 2 < n && line[i + 1] == q && line[i + 2] == q) {
                st.triple_quote = 0;
                i += 3;
            } else {
                ++i;
            }
            continue;
        }
        if (st.short_quote) {
            char q = st.short_quote;
            if (line[i] == '\\') {
                if (i + 1 >= n) {
                    // Escaped newline: the short string continues on the next line.
                    return true;
                }
                i += 2;
            } else if (line[i] == q) {
                st.short_quote = 0;
                ++i;
            } else {
                ++i;
            }
            continue;
        }
        char c = line[i];
        if (c == '#') {
            return true;  // rest of line is comment, already blank in out
        }
        if (c == '\'' || c == '"') {
            if (i + 2 < n && line[i + 1] == c && line[i + 2] == c) {
                st.triple_quote = c;
                i += 3;
            } else {
                st.short_quote = c;
                ++i;
            }
            continue;
        }
        if (c == '(' || c == '[' || c == '{') {
            ++st.depth;
            out[i] = c;
            ++i;
            continue;
        }
        if (c == ')' || c == ']' || c == '}') {
            --st.depth;
            if (st.depth < 0) {
                err = "unbalanced closing bracket";
                return false;
            }
            out[i] = c;
            ++i;
            continue;
        }
        if (c == '\\' && i + 1 >= n) {
            st.backslash_cont = true;
            out[i] = c;
            ++i;
            continue;
        }
        out[i] = c;
        ++i;
    }
    if (st.short_quote && !st.backslash_cont) {
        // Unterminated short string at EOL is a syntax error; recover leniently
        // so one bad line does not discard the whole file.
        st.short_quote = 0;
    }
    return true;
}

int indent_of(const std::string& line) {
    int col = 0;
    for (char c : line) {
        if (c == ' ') {
            ++col;
        } else if (c == '\t') {
            col = (col / 8 + 1) * 8;
        } else {
            break;
        }
    }
    return col;
}

enum class LineClass { Blank, Comment, Decorator, Header, Statement };

struct LogicalLine {
    int first = 0;  // 0-based physical line indices
    int last = 0;
    int indent = 0;
    LineClass cls = LineClass::Statement;
    PyDefKind kind = PyDefKind::Function;
    std::string name;  // for headers
};

// Classifies the first physical line of a logical group.
void classify(const std::vector<std::string>& lines, const std::vector<std::string>& sanitized,
              LogicalLine& ll) {
    const std::string& orig = lines[static_cast<std::size_t>(ll.first)];
    std::string stripped = trim(orig);
    if (stripped.empty()) {
        ll.cls = LineClass::Blank;
        return;
    }
    if (stripped[0] == '#') {
        ll.cls = LineClass::Comment;
        return;
    }
    if (stripped[0] == '@') {
        ll.cls = LineClass::Decorator;
        return;
    }
    // Header detection works on the sanitized line so a quoted "def" cannot
    // fool it (a string statement never begins a line with def anyway, but the
    // comment-stripped text is the safer input).
    std::string s = trim(sanitized[static_cast<std::size_t>(ll.first)]);
    std::size_t pos = 0;
    bool header = false;
    PyDefKind kind = PyDefKind::Function;
    if (starts_with(s, "async")) {
        std::size_t p = 5;
        while (p < s.size() && (s[p] == ' ' || s[p] == '\t')) ++p;
        if (p > 5 && starts_with(std::string_view(s).substr(p), "def") &&
            (p + 3 >= s.size() || !is_ident_char(s[p + 3]))) {
            header = true;
            pos = p + 3;
        }
    } else if (starts_with(s, "def") && (s.size() == 3 || !is_ident_char(s[3]))) {
        header = true;
        pos = 3;
    } else if (starts_with(s, "class") && (s.size() == 5 || !is_ident_char(s[5]))) {
        header = true;
        kind = PyDefKind::Class;
        pos = 5;
    }
    if (!header) {
        ll.cls = LineClass::Statement;
        return;
    }
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    std::size_t name_end = pos;
    while (name_end < s.size() && is_ident_char(s[name_end])) ++name_end;
    if (name_end == pos || std::isdigit(static_cast<unsigned char>(s[pos]))) {
        ll.cls = LineClass::Statement;  // "def (x):" — malformed, treat as plain code
        return;
    }
    ll.cls = LineClass::Header;
    ll.kind = kind;
    ll.name = s.substr(pos, name_end - pos);
}

std::string header_signature(const std::vector<std::string>& lines, int first, int last) {
    std::vector<std::string> parts;
    for (int i = first; i <= last; ++i) {
        std::string t = trim(lines[static_cast<std::size_t>(i)]);
        if (!t.empty()) parts.push_back(std::move(t));
    }
    return join(parts, " ");
}

}  // namespace

PyParse parse_python(const std::string& source) {
    PyParse result;
    std::vector<std::string> lines = split_lines(source);
    result.line_count = static_cast<int>(lines.size());
    result.sanitized.reserve(lines.size());

    LexState st;
    std::vector<bool> starts_logical(lines.size(), false);
    bool prev_backslash = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        starts_logical[i] = st.triple_quote == 0 && st.short_quote == 0 && st.depth == 0 &&
                            !prev_backslash;
        std::string out;
        std::string err;
        if (!sanitize_line(lines[i], st, out, err)) {
            result.failed = true;
            result.failure = err + " at line " + std::to_string(i + 1);
            return result;
        }
        prev_backslash = st.backslash_cont;
        result.sanitized.push_back(std::move(out));
    }
    if (st.triple_quote) {
        result.failed = true;
        result.failure = "unterminated triple-quoted string";
        return result;
    }
    if (st.depth > 0) {
        result.failed = true;
        result.failure = "unbalanced open bracket at end of file";
        return result;
    }

    // Group physical lines into logical statements.
    std::vector<LogicalLine> groups;
    for (std::size_t i = 0; i < lines.size();) {
        LogicalLine ll;
        ll.first = static_cast<int>(i);
        std::size_t j = i + 1;
        while (j < lines.size() && !starts_logical[j]) ++j;
        ll.last = static_cast<int>(j - 1);
        ll.indent = indent_of(lines[i]);
        classify(lines, result.sanitized, ll);
        groups.push_back(std::move(ll));
        i = j;
    }

    // Indent-stack tree construction.  All line numbers converted to 1-based.
    std::vector<int> stack;  // indices into result.defs
    int pending_decorator = -1;
    for (const LogicalLine& g : groups) {
        if (g.cls == LineClass::Blank || g.cls == LineClass::Comment) continue;

        while (!stack.empty()) {
            const PyDef& top = result.defs[static_cast<std::size_t>(stack.back())];
            int top_indent = indent_of(lines[static_cast<std::size_t>(top.header_line - 1)]);
            if (g.indent <= top_indent) {
                stack.pop_back();
            } else {
                break;
            }
        }
        for (int idx : stack) {
            PyDef& d = result.defs[static_cast<std::size_t>(idx)];
            if (g.last + 1 > d.end_line) d.end_line = g.last + 1;
        }

        if (g.cls == LineClass::Decorator) {
            if (pending_decorator < 0) pending_decorator = g.first;
            continue;
        }
        if (g.cls == LineClass::Header) {
            PyDef def;
            def.kind = g.kind;
            def.name = g.name;
            def.header_line = g.first + 1;
            def.header_end_line = g.last + 1;
            def.start_line = pending_decorator >= 0 ? pending_decorator + 1 : g.first + 1;
            def.end_line = g.last + 1;
            def.signature = header_signature(lines, g.first, g.last);
            def.parent = stack.empty() ? -1 : stack.back();
            def.qualified = def.parent < 0
                                ? def.name
                                : result.defs[static_cast<std::size_t>(def.parent)].qualified + "." +
                                      def.name;
            int idx = static_cast<int>(result.defs.size());
            if (def.parent >= 0) {
                result.defs[static_cast<std::size_t>(def.parent)].children.push_back(idx);
            }
            result.defs.push_back(std::move(def));
            stack.push_back(idx);
            pending_decorator = -1;
            continue;
        }
        pending_decorator = -1;  // plain statement interrupts a decorator run
    }
    return result;
}

}  // namespace scout
