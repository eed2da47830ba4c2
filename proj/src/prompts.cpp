// Prompt templates: flat text files with {{variable}} placeholders.
#include "scout/prompts.hpp"

#include <fstream>
#include <sstream>

#include "scout/text.hpp"

namespace scout {

Result<std::string> render_template(const std::string& tmpl,
                                    const std::map<std::string, std::string>& vars) {
    std::string out;
    out.reserve(tmpl.size());
    std::size_t pos = 0;
    while (pos < tmpl.size()) {
        std::size_t open = tmpl.find("{{", pos);
        if (open == std::string::npos) {
            out.append(tmpl, pos, std::string::npos);
            break;
        }
        out.append(tmpl, pos, open - pos);
        std::size_t close = tmpl.find("}}", open + 2);
        if (close == std::string::npos) {
            return make_error(ErrorCode::Parse, "template has an unterminated '{{' placeholder");
        }
        std::string key = trim(tmpl.substr(open + 2, close - open - 2));
        auto it = vars.find(key);
        if (it == vars.end()) {
            return make_error(ErrorCode::Parse,
                              "template references unknown variable '" + key + "'");
        }
        out += it->second;
        pos = close + 2;
    }
    return out;
}

Result<std::string> load_prompt(const std::string& prompt_dir, const std::string& name) {
    std::string path = prompt_dir;
    if (!path.empty() && path.back() != '/') path += '/';
    path += name + ".txt";
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return make_error(ErrorCode::NotFound, "prompt not found: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Result<std::string> render_prompt(const std::string& prompt_dir, const std::string& name,
                                  const std::map<std::string, std::string>& vars) {
    auto raw = load_prompt(prompt_dir, name);
    if (!raw.ok()) return raw.error();
    auto rendered = render_template(raw.value(), vars);
    if (!rendered.ok()) {
        Error e = rendered.error();
        e.message += " (prompt '" + name + "')";
        return e;
    }
    return rendered;
}

}  // namespace scout
