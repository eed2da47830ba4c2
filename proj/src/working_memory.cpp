#include "scout/working_memory.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

namespace fs = std::filesystem;

namespace scout {

TodoRecord* HypothesisRecord::find_todo(const std::string& content) {
    for (auto& t : todos)
        if (t.content == content) return &t;
    return nullptr;
}

const TodoRecord* HypothesisRecord::find_todo(const std::string& content) const {
    for (const auto& t : todos)
        if (t.content == content) return &t;
    return nullptr;
}

HypothesisRecord* WorkingMemoryState::find_hypothesis(const std::string& name) {
    for (auto& h : hypotheses)
        if (h.name == name) return &h;
    return nullptr;
}

const HypothesisRecord* WorkingMemoryState::find_hypothesis(const std::string& name) const {
    for (const auto& h : hypotheses)
        if (h.name == name) return &h;
    return nullptr;
}

bool is_commit_hash(const std::string& s) {
    if (s.size() != 40) return false;
    for (char c : s) {
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    }
    return true;
}

namespace {

nlohmann::json todo_to_json(const TodoRecord& t) {
    nlohmann::json j{{"content", t.content},
                     {"action", action_name(t.action)},
                     {"status", status_name(t.status)}};
    if (t.checkpoint) {
        j["checkpoint"] = {{"hash", t.checkpoint->hash}, {"message", t.checkpoint->message}};
    }
    return j;
}

nlohmann::json hypothesis_to_json(const HypothesisRecord& h) {
    nlohmann::json todos = nlohmann::json::array();
    for (const auto& t : h.todos) todos.push_back(todo_to_json(t));
    return {{"name", h.name},         {"content", h.content},
            {"status", status_name(h.status)}, {"confidence", h.confidence},
            {"branch", h.branch},     {"origin_hash", h.origin_hash},
            {"todos", std::move(todos)}};
}

Result<TodoRecord> todo_from_json(const nlohmann::json& j) {
    TodoRecord t;
    if (!j.is_object() || !j.contains("content") || !j.at("content").is_string())
        return make_error(ErrorCode::Schema, "todo: missing string field 'content'");
    t.content = j.at("content").get<std::string>();
    auto action = parse_action_name(j.value("action", ""));
    if (!action.ok())
        return make_error(ErrorCode::Schema,
                                      "todo '" + t.content + "': " + action.error().message);
    t.action = action.value();
    auto status = parse_status_name(j.value("status", ""));
    if (!status.ok())
        return make_error(ErrorCode::Schema,
                                      "todo '" + t.content + "': " + status.error().message);
    t.status = status.value();
    if (j.contains("checkpoint")) {
        const auto& c = j.at("checkpoint");
        if (!c.is_object() || !c.contains("hash") || !c.at("hash").is_string())
            return make_error(ErrorCode::Schema,
                                          "todo '" + t.content + "': malformed checkpoint");
        Checkpoint cp;
        cp.hash = c.at("hash").get<std::string>();
        cp.message = c.value("message", "");
        if (!is_commit_hash(cp.hash))
            return make_error(
                ErrorCode::Schema,
                "todo '" + t.content + "': checkpoint hash is not 40 lowercase hex");
        if (t.status != ItemStatus::Successful && t.status != ItemStatus::Failed)
            return make_error(
                ErrorCode::Schema,
                "todo '" + t.content + "': checkpoint requires successful or failed status");
        t.checkpoint = cp;
    }
    return t;
}

Result<HypothesisRecord> hypothesis_from_json(const nlohmann::json& j) {
    HypothesisRecord h;
    if (!j.is_object() || !j.contains("name") || !j.at("name").is_string())
        return make_error(ErrorCode::Schema,
                                            "hypothesis: missing string field 'name'");
    h.name = j.at("name").get<std::string>();
    h.content = j.value("content", "");
    auto status = parse_status_name(j.value("status", ""));
    if (!status.ok())
        return make_error(
            ErrorCode::Schema, "hypothesis '" + h.name + "': " + status.error().message);
    h.status = status.value();
    h.confidence = j.value("confidence", 0.1);
    if (h.confidence < 0.1 || h.confidence > 1.0)
        return make_error(
            ErrorCode::Schema, "hypothesis '" + h.name + "': confidence outside 0.1-1.0");
    h.branch = j.value("branch", "");
    h.origin_hash = j.value("origin_hash", "");
    if (!h.origin_hash.empty() && !is_commit_hash(h.origin_hash))
        return make_error(
            ErrorCode::Schema, "hypothesis '" + h.name + "': origin hash is not 40 lowercase hex");
    if (h.status == ItemStatus::Pending && !h.branch.empty())
        return make_error(
            ErrorCode::Schema, "hypothesis '" + h.name + "': pending but has a branch bound");
    if (j.contains("todos")) {
        if (!j.at("todos").is_array())
            return make_error(ErrorCode::Schema,
                                                "hypothesis '" + h.name + "': todos not an array");
        for (const auto& tj : j.at("todos")) {
            auto t = todo_from_json(tj);
            if (!t.ok()) return make_error(t.error().code, t.error().message);
            h.todos.push_back(t.take());
        }
    }
    return h;
}

}  // namespace

nlohmann::json memory_to_json(const WorkingMemoryState& state) {
    nlohmann::json hyps = nlohmann::json::array();
    for (const auto& h : state.hypotheses) hyps.push_back(hypothesis_to_json(h));
    nlohmann::json insights = nlohmann::json::array();
    for (const auto& i : state.insights) {
        insights.push_back(
            {{"hypothesis", i.hypothesis}, {"text", i.text}, {"timestamp", i.timestamp}});
    }
    nlohmann::json j{{"schema_version", state.schema_version},
                     {"original_state_hash", state.original_state_hash},
                     {"base_hash", state.base_hash},
                     {"merged_branch", state.merged_branch},
                     {"hypotheses", std::move(hyps)},
                     {"insights", std::move(insights)},
                     {"clock", state.clock}};
    for (auto it = state.extra.begin(); it != state.extra.end(); ++it) {
        if (!j.contains(it.key())) j[it.key()] = it.value();
    }
    return j;
}

Result<WorkingMemoryState> memory_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        return make_error(ErrorCode::Schema, "memory: not a JSON object");
    WorkingMemoryState state;
    if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer())
        return make_error(ErrorCode::Schema,
                                              "memory: missing integer 'schema_version'");
    state.schema_version = j.at("schema_version").get<int>();
    if (state.schema_version != WorkingMemoryState::kSchemaVersion)
        return make_error(
            ErrorCode::Schema, "memory: unsupported schema version " +
                                   std::to_string(state.schema_version) + " (engine speaks " +
                                   std::to_string(WorkingMemoryState::kSchemaVersion) + ")");
    state.original_state_hash = j.value("original_state_hash", "");
    state.base_hash = j.value("base_hash", "");
    state.merged_branch = j.value("merged_branch", "");
    for (const char* field : {"original_state_hash", "base_hash"}) {
        const std::string& v =
            field == std::string("base_hash") ? state.base_hash : state.original_state_hash;
        if (!v.empty() && !is_commit_hash(v))
            return make_error(
                ErrorCode::Schema, std::string("memory: ") + field + " is not 40 lowercase hex");
    }
    if ((state.base_hash.empty()) != (state.original_state_hash.empty()))
        return make_error(
            ErrorCode::Schema, "memory: base and original hashes must be set together");
    std::set<std::string> names;
    if (j.contains("hypotheses")) {
        if (!j.at("hypotheses").is_array())
            return make_error(ErrorCode::Schema,
                                                  "memory: hypotheses not an array");
        for (const auto& hj : j.at("hypotheses")) {
            auto h = hypothesis_from_json(hj);
            if (!h.ok())
                return make_error(h.error().code, h.error().message);
            if (!names.insert(h.value().name).second)
                return make_error(
                    ErrorCode::Schema, "memory: duplicate hypothesis name '" + h.value().name + "'");
            state.hypotheses.push_back(h.take());
        }
    }
    if (j.contains("insights")) {
        if (!j.at("insights").is_array())
            return make_error(ErrorCode::Schema,
                                                  "memory: insights not an array");
        for (const auto& ij : j.at("insights")) {
            if (!ij.is_object() || !ij.contains("text") || !ij.at("text").is_string())
                return make_error(ErrorCode::Schema,
                                                      "memory: insight missing string 'text'");
            Insight i;
            i.hypothesis = ij.value("hypothesis", "");
            i.text = ij.at("text").get<std::string>();
            i.timestamp = ij.value("timestamp", static_cast<std::int64_t>(0));
            state.insights.push_back(std::move(i));
        }
    }
    state.clock = j.value("clock", static_cast<std::int64_t>(0));
    static const std::set<std::string> known{
        "schema_version", "original_state_hash", "base_hash", "merged_branch",
        "hypotheses",     "insights",            "clock"};
    state.extra = nlohmann::json::object();
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key())) state.extra[it.key()] = it.value();
    }
    return state;
}

Result<void> save_memory(const WorkingMemoryState& state, const std::string& path) {
    std::error_code ec;
    fs::path target(path);
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path(), ec);
        if (ec)
            return make_error(ErrorCode::Io, "cannot create registry directory '" +
                                                       target.parent_path().string() + "'");
    }
    std::string body = memory_to_json(state).dump(2) + "\n";
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out.good())
            return make_error(ErrorCode::Io, "cannot write '" + tmp.string() + "'");
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        if (!out.good())
            return make_error(ErrorCode::Io, "short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        return make_error(ErrorCode::Io, "cannot rename into place: '" + path + "'");
    }
    return Result<void>();
}

Result<WorkingMemoryState> load_memory(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good())
        return make_error(ErrorCode::NotFound,
                                              "memory file not found: '" + path + "'");
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded())
        return make_error(ErrorCode::Schema,
                                              "memory file is not valid JSON: '" + path + "'");
    auto state = memory_from_json(j);
    if (!state.ok())
        return make_error(state.error().code,
                                              state.error().message + " (file '" + path + "')");
    return state;
}

namespace {

std::string list_todos(const HypothesisRecord& h, bool with_checkpoints_only) {
    std::string out;
    for (const auto& t : h.todos) {
        if (with_checkpoints_only && !t.checkpoint) continue;
        if (!out.empty()) out += ", ";
        out += "'" + t.content + "'";
    }
    return out.empty() ? "(none)" : out;
}

}  // namespace

Result<TodoRecord*> resolve_todo(HypothesisRecord& hypothesis, const std::string& content) {
    if (TodoRecord* exact = hypothesis.find_todo(content)) return exact;
    std::vector<TodoRecord*> prefixed;
    for (auto& t : hypothesis.todos) {
        if (t.content.size() >= content.size() &&
            t.content.compare(0, content.size(), content) == 0) {
            prefixed.push_back(&t);
        }
    }
    if (prefixed.size() == 1) return prefixed.front();
    if (prefixed.size() > 1) {
        std::string names;
        for (auto* t : prefixed) {
            if (!names.empty()) names += ", ";
            names += "'" + t->content + "'";
        }
        return make_error(ErrorCode::Ambiguous,
                                       "todo prefix '" + content + "' is ambiguous between " + names);
    }
    return make_error(ErrorCode::NotFound,
                                   "no todo '" + content + "' under hypothesis '" +
                                       hypothesis.name + "'; available: " +
                                       list_todos(hypothesis, false));
}

Result<void> record_checkpoint(WorkingMemoryState& state, const std::string& hypothesis,
                               const std::string& todo_content, const std::string& hash,
                               const std::string& message) {
    HypothesisRecord* h = state.find_hypothesis(hypothesis);
    if (!h)
        return make_error(ErrorCode::NotFound,
                                "no hypothesis named '" + hypothesis + "'");
    if (h->status != ItemStatus::InProgress)
        return make_error(ErrorCode::Precondition,
                                "hypothesis '" + hypothesis + "' is " + status_name(h->status) +
                                    ", not in_progress");
    TodoRecord* t = h->find_todo(todo_content);
    if (!t)
        return make_error(ErrorCode::NotFound,
                                "no todo '" + todo_content + "' under hypothesis '" + hypothesis +
                                    "'; available: " + list_todos(*h, false));
    if (t->checkpoint)
        return make_error(ErrorCode::Conflict,
                                "todo '" + t->content + "' already has checkpoint " +
                                    t->checkpoint->hash.substr(0, 12));
    if (!is_commit_hash(hash))
        return make_error(ErrorCode::InvalidTask, "checkpoint hash is not 40 lowercase hex");
    if (t->status != ItemStatus::Successful && t->status != ItemStatus::Failed)
        t->status = ItemStatus::Successful;  // checkpoint implies the step completed
    t->checkpoint = Checkpoint{hash, message};
    return Result<void>();
}

Result<Checkpoint> lookup_checkpoint(const WorkingMemoryState& state,
                                     const std::string& hypothesis,
                                     const std::string& todo_content) {
    const HypothesisRecord* h = state.find_hypothesis(hypothesis);
    if (!h)
        return make_error(ErrorCode::NotFound,
                                      "no hypothesis named '" + hypothesis + "'");
    auto resolved = resolve_todo(const_cast<HypothesisRecord&>(*h), todo_content);
    if (!resolved.ok())
        return make_error(resolved.error().code, resolved.error().message);
    const TodoRecord* t = resolved.value();
    if (!t->checkpoint)
        return make_error(ErrorCode::NotFound,
                                      "todo '" + t->content + "' has no checkpoint; todos with " +
                                          "checkpoints: " + list_todos(*h, true));
    return *t->checkpoint;
}

std::string registry_memory_path(const std::string& registry_dir, const std::string& instance_id) {
    std::string safe;
    for (char c : instance_id) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '-' || c == '_' || c == '.';
        safe += ok ? c : '_';
    }
    if (safe.empty()) safe = "default";
    return (fs::path(registry_dir) / (safe + ".json")).string();
}

}  // namespace scout
