// Hand-rolled Python definition parser: finds def/class spans (decorators
// included), nesting, and produces sanitized source lines (string literals and
// comments blanked, length-preserving) for downstream call scanning.
#pragma once

#include <string>
#include <vector>

namespace scout {

enum class PyDefKind { Function, Class };

struct PyDef {
    PyDefKind kind = PyDefKind::Function;
    std::string name;       // unqualified identifier
    std::string qualified;  // dotted path, e.g. "Config.get"
    int start_line = 0;     // 1-based; first decorator line when decorated
    int header_line = 0;    // the def/class keyword line
    int header_end_line = 0;  // last physical line of the header statement
    int end_line = 0;       // last significant line of the body
    std::string signature;  // trimmed header text (multi-line headers joined)
    int parent = -1;        // index into PyParse::defs, -1 for top level
    std::vector<int> children;  // direct nested definitions, source order
};

struct PyParse {
    std::vector<PyDef> defs;             // pre-order by start line
    std::vector<std::string> sanitized;  // per physical line, lengths preserved
    int line_count = 0;
    bool failed = false;    // lexical failure: file should be chunked instead
    std::string failure;
};

PyParse parse_python(const std::string& source);

}  // namespace scout
