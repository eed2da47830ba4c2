// Localization: tool-call exploration loop plus the two-stage ranking.
#include "scout/localization.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "scout/prompts.hpp"
#include "scout/search_tools.hpp"
#include "scout/text.hpp"

namespace scout {

namespace {

using nlohmann::json;

std::string format_error(const Error& e) {
    return std::string("error[") + error_code_name(e.code) + "]: " + e.message;
}

Result<std::string> arg_string(const json& args, const char* key) {
    if (!args.contains(key) || !args.at(key).is_string() ||
        args.at(key).get<std::string>().empty()) {
        return make_error(ErrorCode::InvalidTask,
                          std::string("missing string argument '") + key + "'");
    }
    return args.at(key).get<std::string>();
}

Result<std::optional<std::string>> arg_opt_string(const json& args, const char* key) {
    if (!args.contains(key) || args.at(key).is_null()) return std::optional<std::string>{};
    if (!args.at(key).is_string()) {
        return make_error(ErrorCode::InvalidTask,
                          std::string("argument '") + key + "' must be a string");
    }
    return std::optional<std::string>{args.at(key).get<std::string>()};
}

Result<std::optional<int>> arg_opt_int(const json& args, const char* key) {
    if (!args.contains(key) || args.at(key).is_null()) return std::optional<int>{};
    if (!args.at(key).is_number_integer()) {
        return make_error(ErrorCode::InvalidTask,
                          std::string("argument '") + key + "' must be an integer");
    }
    return std::optional<int>{args.at(key).get<int>()};
}

struct ToolExecution {
    bool tool_ok = false;
    int hits = 0;
    std::string observation;
};

// Dispatches one well-formed tool call.  Schema-level problems (unknown tool,
// missing or mistyped arguments) come back as errors — the caller treats
// those as malformed calls.  Domain failures from the tool itself (no such
// file, bad query) become normal observations with tool_ok=false.
Result<ToolExecution> execute_search_call(const CodeIndex& index, const SearchConfig& scfg,
                                          const ToolCall& call) {
    auto fail = [&](const Error& e) {
        return make_error(ErrorCode::InvalidTask, call.name + ": " + e.message);
    };
    ToolExecution te;
    if (call.name == "find_file") {
        auto file_name = arg_string(call.args, "file_name");
        if (!file_name.ok()) return fail(file_name.error());
        auto dir = arg_opt_string(call.args, "dir_path");
        if (!dir.ok()) return fail(dir.error());
        auto r = find_file(index, scfg, file_name.value(), dir.value());
        if (r.ok()) {
            te.tool_ok = true;
            te.hits = static_cast<int>(r.value().matches.size());
            te.observation = render_find_file(r.value());
        } else {
            te.observation = format_error(r.error());
        }
        return te;
    }
    if (call.name == "find_code_def") {
        auto name = arg_string(call.args, "definition_name");
        if (!name.ok()) return fail(name.error());
        auto file = arg_opt_string(call.args, "file_path");
        if (!file.ok()) return fail(file.error());
        auto r = find_code_def(index, scfg, name.value(), file.value());
        if (r.ok()) {
            te.tool_ok = true;
            te.hits = static_cast<int>(r.value().hits.size());
            te.observation = render_response(r.value());
        } else {
            te.observation = format_error(r.error());
        }
        return te;
    }
    if (call.name == "find_code_content") {
        auto content = arg_string(call.args, "content");
        if (!content.ok()) return fail(content.error());
        auto file = arg_opt_string(call.args, "file_path");
        if (!file.ok()) return fail(file.error());
        auto start = arg_opt_int(call.args, "start_line");
        if (!start.ok()) return fail(start.error());
        auto end = arg_opt_int(call.args, "end_line");
        if (!end.ok()) return fail(end.error());
        auto r = find_code_content(index, scfg, content.value(), file.value(), start.value(),
                                   end.value());
        if (r.ok()) {
            te.tool_ok = true;
            te.hits = static_cast<int>(r.value().hits.size());
            te.observation = render_response(r.value());
        } else {
            te.observation = format_error(r.error());
        }
        return te;
    }
    if (call.name == "find_child_unit") {
        auto name = arg_string(call.args, "definition_name");
        if (!name.ok()) return fail(name.error());
        auto file = arg_string(call.args, "file_path");
        if (!file.ok()) return fail(file.error());
        auto r = find_child_unit(index, scfg, name.value(), file.value());
        if (r.ok()) {
            te.tool_ok = true;
            te.hits = static_cast<int>(r.value().hits.size());
            te.observation = render_response(r.value());
        } else {
            te.observation = format_error(r.error());
        }
        return te;
    }
    return make_error(ErrorCode::InvalidTask,
                      "unknown tool '" + call.name +
                          "'; valid tools: find_file, find_code_def, find_code_content, "
                          "find_child_unit, finish_search");
}

// Assistant turns are recorded as text plus a flat rendering of their calls
// so later expectation matchers can see both.
std::string render_assistant(const Reply& rep) {
    std::string s = rep.text;
    for (const ToolCall& c : rep.tool_calls) {
        if (!s.empty() && s.back() != '\n') s += '\n';
        s += "[tool_call] " + c.name + " " + c.args.dump();
    }
    return s;
}

const CodeUnit* resolve_location(const CodeIndex& index, const std::string& path,
                                 const std::string& name) {
    auto it = index.by_file.find(path);
    if (it == index.by_file.end()) return nullptr;
    for (const std::string& id : it->second) {
        const CodeUnit* u = index.find(id);
        if (u && u->is_definition() && u->name == name) return u;
    }
    return nullptr;
}

// Pulls the "path::name" token out of one ranking line, shedding list
// enumeration and markdown decoration; the remainder is the rationale.
bool extract_ranking_token(const std::string& line, std::string& token, std::string& rationale) {
    std::size_t sep = line.find("::");
    if (sep == std::string::npos) return false;
    std::size_t begin = line.find_last_of(" \t", sep);
    begin = (begin == std::string::npos) ? 0 : begin + 1;
    std::size_t end = line.find_first_of(" \t", sep);
    if (end == std::string::npos) end = line.size();
    token = line.substr(begin, end - begin);

    std::size_t p = 0;
    while (p < token.size() && std::isdigit(static_cast<unsigned char>(token[p]))) ++p;
    if (p > 0 && p < token.size() && (token[p] == '.' || token[p] == ')')) {
        ++p;
    } else {
        p = 0;  // leading digits belong to the path, not an enumerator
    }
    token.erase(0, p);
    auto is_decor = [](char c) { return c == '`' || c == '*' || c == '"' || c == '\''; };
    while (!token.empty() && is_decor(token.front())) token.erase(0, 1);
    while (!token.empty() && (is_decor(token.back()) || token.back() == ',' ||
                              token.back() == ';' || token.back() == ':' || token.back() == '.')) {
        token.pop_back();
    }

    rationale = trim(line.substr(std::min(end, line.size())));
    for (;;) {
        if (rationale.rfind("\xE2\x80\x94", 0) == 0 || rationale.rfind("\xE2\x80\x93", 0) == 0) {
            rationale = trim(rationale.substr(3));  // em/en dash
        } else if (!rationale.empty() && (rationale[0] == '-' || rationale[0] == ':')) {
            rationale = trim(rationale.substr(1));
        } else {
            break;
        }
    }
    return !token.empty();
}

struct StageTwoSources {
    std::string content;
    bool truncated = false;
    std::vector<std::string> omitted;  // unit ids that did not fit
};

StageTwoSources build_stage2_sources(const CodeIndex& index,
                                     const std::vector<LocationEntry>& entries,
                                     std::size_t budget) {
    static const std::string marker = "... [truncated to fit the source budget]\n";
    StageTwoSources out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const CodeUnit* u = index.find(entries[i].unit_id);
        if (!u) {
            out.omitted.push_back(entries[i].unit_id);
            continue;
        }
        std::string header = "### " + entries[i].path + "::" + entries[i].name + " (lines " +
                             std::to_string(u->start_line) + "-" + std::to_string(u->end_line) +
                             ")\n";
        std::string body = u->text;
        if (body.empty() || body.back() != '\n') body += '\n';
        std::string block = header + body + "\n";
        if (out.content.size() + block.size() <= budget) {
            out.content += block;
            continue;
        }
        out.truncated = true;
        if (out.content.size() + header.size() + marker.size() < budget) {
            std::size_t room = budget - out.content.size() - header.size() - marker.size();
            std::string head = body.substr(0, room);
            std::size_t nl = head.rfind('\n');
            head = (nl == std::string::npos) ? std::string() : head.substr(0, nl + 1);
            out.content += header + head + marker;
        } else {
            out.omitted.push_back(entries[i].unit_id);
        }
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            out.omitted.push_back(entries[j].unit_id);
        }
        break;
    }
    return out;
}

}  // namespace

std::vector<LocationEntry> parse_ranking(const CodeIndex& index, const std::string& text,
                                         std::vector<std::string>& warnings) {
    std::vector<LocationEntry> out;
    std::set<std::string> seen;
    for (const std::string& line : split_lines(text)) {
        std::string token;
        std::string rationale;
        if (!extract_ranking_token(line, token, rationale)) continue;
        std::size_t sep = token.find("::");
        if (sep == std::string::npos) continue;
        std::string path = trim(token.substr(0, sep));
        std::string name = trim(token.substr(sep + 2));
        if (path.empty() || name.empty()) {
            warnings.push_back("ranking entry '" + token + "' is incomplete; dropped");
            continue;
        }
        const CodeUnit* u = resolve_location(index, path, name);
        if (!u) {
            if (index.has_file(path)) {
                warnings.push_back("ranking entry '" + token + "': no definition '" + name +
                                   "' in " + path + "; dropped");
            } else {
                warnings.push_back("ranking entry '" + token +
                                   "' references a file not in the index; dropped");
            }
            continue;
        }
        if (!seen.insert(u->id).second) {
            warnings.push_back("duplicate ranking entry '" + u->id + "' ignored");
            continue;
        }
        out.push_back(LocationEntry{path, u->name, u->id, rationale});
    }
    return out;
}

Result<LocalizationOutcome> run_localization(const CodeIndex& index, LlmClient& client,
                                             const EngineConfig& cfg,
                                             const LocalizationTask& task) {
    LocalizationOutcome out;
    out.instance_id = task.instance_id;
    if (trim(task.issue_description).empty()) {
        return make_error(ErrorCode::InvalidTask, "issue description is empty");
    }

    const std::string& pd = cfg.paths.prompt_dir;
    auto sys = render_prompt(pd, "localize_system",
                             {{"max_iterations", std::to_string(cfg.localize.max_iterations)}});
    if (!sys.ok()) return sys.error();
    auto inst = render_prompt(pd, "localize_instance",
                              {{"repo_name", task.repo_name},
                               {"issue_description", task.issue_description}});
    if (!inst.ok()) return inst.error();
    auto stage1_prompt = load_prompt(pd, "localize_stage1");
    if (!stage1_prompt.ok()) return stage1_prompt.error();
    auto stage2_tmpl = load_prompt(pd, "localize_stage2");
    if (!stage2_tmpl.ok()) return stage2_tmpl.error();

    std::vector<Message> messages{{"system", sys.value()}, {"user", inst.value()}};
    json steps = json::array();
    std::vector<std::string> warnings;
    json stage1_info = {{"entries", json::array()}, {"retries", 0}};
    json stage2_info = {{"used", false},          {"fell_back", false},
                        {"retries", 0},           {"dropped", json::array()},
                        {"source_bytes", 0},      {"source_truncated", false},
                        {"omitted_sources", json::array()}};

    auto finalize = [&]() -> LocalizationOutcome {
        json traj;
        traj["steps"] = steps;
        traj["iterations_used"] = out.iterations_used;
        traj["max_depth"] = out.max_depth;
        traj["finish_called"] = out.finish_called;
        traj["stage1"] = stage1_info;
        traj["stage2"] = stage2_info;
        traj["warnings"] = warnings;
        traj["aborted"] = out.aborted;
        traj["abort_reason"] = out.abort_reason;
        out.trajectory = std::move(traj);
        return out;
    };

    int depth_streak = 0;
    int malformed_retries = 0;
    auto handle_malformed = [&](const std::string& why) {
        depth_streak = 0;
        if (malformed_retries < cfg.localize.malformed_retry_limit) {
            ++malformed_retries;
            steps.push_back({{"type", "malformed_retry"}, {"why", why}});
            messages.push_back(
                {"user", "Tool call problem: " + why +
                             ". Reply again with exactly one valid tool call (find_file, "
                             "find_code_def, find_code_content, find_child_unit, or "
                             "finish_search)."});
        } else {
            ++out.iterations_used;
            steps.push_back(
                {{"type", "malformed"}, {"iteration", out.iterations_used}, {"why", why}});
            messages.push_back({"tool", "error[invalid-task]: " + why});
        }
    };

    // Exploration loop: only executed search-tool calls consume the budget.
    while (out.iterations_used < cfg.localize.max_iterations) {
        auto reply = client.complete(messages);
        if (!reply.ok()) {
            if (reply.error().code == ErrorCode::Transport) {
                out.aborted = true;
                out.abort_reason = reply.error().message;
                return finalize();
            }
            return reply.error();
        }
        const Reply& rep = reply.value();
        messages.push_back({"assistant", render_assistant(rep)});
        if (rep.tool_calls.empty()) {
            handle_malformed("reply contained no tool call");
            continue;
        }
        if (rep.tool_calls.size() > 1) {
            warnings.push_back("reply contained " + std::to_string(rep.tool_calls.size()) +
                               " tool calls; only the first was executed");
        }
        const ToolCall& call = rep.tool_calls.front();
        if (call.name == "finish_search") {
            out.finish_called = true;
            steps.push_back({{"type", "finish"}, {"after_iterations", out.iterations_used}});
            break;
        }
        auto exec = execute_search_call(index, cfg.search, call);
        if (!exec.ok()) {
            handle_malformed(exec.error().message);
            continue;
        }
        ++out.iterations_used;
        const ToolExecution& te = exec.value();
        if (call.name == "find_child_unit" && te.tool_ok && te.hits > 0) {
            ++depth_streak;
            out.max_depth = std::max(out.max_depth, depth_streak);
        } else {
            depth_streak = 0;
        }
        messages.push_back({"tool", te.observation});
        steps.push_back({{"type", "tool"},
                         {"iteration", out.iterations_used},
                         {"tool", call.name},
                         {"args", call.args},
                         {"ok", te.tool_ok},
                         {"hits", te.hits},
                         {"observation_chars", te.observation.size()},
                         {"depth_streak", depth_streak}});
    }

    // Stage 1: shortlist from the conversation.
    messages.push_back({"user", stage1_prompt.value()});
    std::vector<LocationEntry> stage1;
    int s1_retries = 0;
    for (;;) {
        auto reply = client.complete(messages);
        if (!reply.ok()) {
            if (reply.error().code == ErrorCode::Transport) {
                out.aborted = true;
                out.abort_reason = reply.error().message;
                stage1_info["retries"] = s1_retries;
                return finalize();
            }
            return reply.error();
        }
        messages.push_back({"assistant", render_assistant(reply.value())});
        stage1 = parse_ranking(index, reply.value().text, warnings);
        if (!stage1.empty() || s1_retries >= cfg.localize.ranking_retry_limit) break;
        ++s1_retries;
        messages.push_back(
            {"user", "I could not parse any `path::name` entries from that reply. Respond with "
                     "only a numbered list in the form `1. path/to/file.py::qualified.name — "
                     "reason`."});
    }
    stage1_info["retries"] = s1_retries;
    for (const LocationEntry& e : stage1) {
        stage1_info["entries"].push_back(e.path + "::" + e.name);
    }
    if (stage1.empty()) {
        out.aborted = true;
        out.abort_reason = "shortlist ranking was unparseable";
        return finalize();
    }

    // Stage 2: re-rank against full candidate sources under the byte budget.
    auto sources = build_stage2_sources(index, stage1,
                                        static_cast<std::size_t>(cfg.localize.stage_two_budget));
    stage2_info["used"] = true;
    stage2_info["source_bytes"] = sources.content.size();
    stage2_info["source_truncated"] = sources.truncated;
    for (const std::string& id : sources.omitted) stage2_info["omitted_sources"].push_back(id);
    auto stage2_msg = render_template(stage2_tmpl.value(),
                                      {{"source_code_content", sources.content}});
    if (!stage2_msg.ok()) return stage2_msg.error();
    messages.push_back({"user", stage2_msg.value()});

    std::set<std::string> allowed;
    for (const LocationEntry& e : stage1) allowed.insert(e.unit_id);
    std::vector<LocationEntry> finals;
    int s2_retries = 0;
    bool fell_back = false;
    for (;;) {
        auto reply = client.complete(messages);
        if (!reply.ok()) {
            if (reply.error().code == ErrorCode::Transport) {
                out.aborted = true;
                out.abort_reason = reply.error().message;
                fell_back = true;
                finals = stage1;
                break;
            }
            return reply.error();
        }
        messages.push_back({"assistant", render_assistant(reply.value())});
        auto parsed = parse_ranking(index, reply.value().text, warnings);
        std::vector<LocationEntry> kept;
        for (const LocationEntry& e : parsed) {
            if (allowed.count(e.unit_id)) {
                kept.push_back(e);
            } else {
                warnings.push_back("re-rank entry '" + e.path + "::" + e.name +
                                   "' is not in the shortlist; dropped");
                stage2_info["dropped"].push_back(e.path + "::" + e.name);
            }
        }
        if (!kept.empty()) {
            finals = kept;
            break;
        }
        if (s2_retries >= cfg.localize.ranking_retry_limit) {
            fell_back = true;
            finals = stage1;
            break;
        }
        ++s2_retries;
        messages.push_back({"user",
                            "I could not use that reply. Respond with only a numbered list of "
                            "`path::name` entries chosen from your shortlist."});
    }
    stage2_info["retries"] = s2_retries;
    stage2_info["fell_back"] = fell_back;
    out.locations = std::move(finals);
    return finalize();
}

nlohmann::json localization_to_json(const LocalizationOutcome& o) {
    json locs = json::array();
    int rank = 0;
    for (const LocationEntry& e : o.locations) {
        locs.push_back({{"rank", ++rank},
                        {"path", e.path},
                        {"name", e.name},
                        {"unit_id", e.unit_id},
                        {"rationale", e.rationale}});
    }
    return json{{"instance_id", o.instance_id},
                {"locations", locs},
                {"trajectory", o.trajectory.is_null() ? json::object() : o.trajectory}};
}

Result<LocalizationOutcome> localization_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("instance_id") || !doc.contains("locations") ||
        !doc.at("locations").is_array()) {
        return make_error(ErrorCode::Schema,
                          "localization document needs 'instance_id' and 'locations'");
    }
    try {
        LocalizationOutcome o;
        o.instance_id = doc.at("instance_id").get<std::string>();
        for (const json& jl : doc.at("locations")) {
            LocationEntry e;
            e.path = jl.value("path", "");
            e.name = jl.value("name", "");
            e.unit_id = jl.value("unit_id", "");
            e.rationale = jl.value("rationale", "");
            o.locations.push_back(std::move(e));
        }
        o.trajectory = doc.value("trajectory", json::object());
        const json& t = o.trajectory;
        o.iterations_used = t.value("iterations_used", 0);
        o.max_depth = t.value("max_depth", 0);
        o.finish_called = t.value("finish_called", false);
        o.aborted = t.value("aborted", false);
        o.abort_reason = t.value("abort_reason", "");
        return o;
    } catch (const json::exception& e) {
        return make_error(ErrorCode::Schema, std::string("localization document: ") + e.what());
    }
}

}  // namespace scout
