// Repair agent loop, tool dispatch, and submission packaging.
#include "scout/resolution.hpp"

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "scout/checklist.hpp"
#include "scout/git_tools.hpp"
#include "scout/plan_tools.hpp"
#include "scout/proc.hpp"
#include "scout/prompts.hpp"
#include "scout/text.hpp"

namespace scout {

namespace fs = std::filesystem;

namespace {

using nlohmann::json;

std::string format_error(const Error& e) {
    return std::string("error[") + error_code_name(e.code) + "]: " + e.message;
}

Result<std::string> arg_string(const json& args, const char* key, bool allow_empty = false) {
    if (!args.contains(key) || !args.at(key).is_string()) {
        return make_error(ErrorCode::InvalidTask,
                          std::string("missing string argument '") + key + "'");
    }
    std::string v = args.at(key).get<std::string>();
    if (v.empty() && !allow_empty) {
        return make_error(ErrorCode::InvalidTask, std::string("argument '") + key +
                                                      "' must not be empty");
    }
    return v;
}

Result<std::optional<int>> arg_opt_int(const json& args, const char* key) {
    if (!args.contains(key) || args.at(key).is_null()) return std::optional<int>{};
    if (!args.at(key).is_number_integer()) {
        return make_error(ErrorCode::InvalidTask,
                          std::string("argument '") + key + "' must be an integer");
    }
    return std::optional<int>{args.at(key).get<int>()};
}

// Keeps the tail: endings carry the verdicts (test summaries, tracebacks).
std::string clamp_observation(const std::string& s, std::size_t limit) {
    if (s.size() <= limit) return s;
    std::string prefix = "... [output truncated, showing the last " + std::to_string(limit) +
                         " of " + std::to_string(s.size()) + " chars]\n";
    return prefix + s.substr(s.size() - limit);
}

bool path_within(const fs::path& canon_ws, const fs::path& candidate) {
    auto ws = canon_ws.generic_string();
    auto c = candidate.generic_string();
    return c == ws || (c.size() > ws.size() && c.compare(0, ws.size(), ws) == 0 &&
                       c[ws.size()] == '/');
}

// Resolves an agent-supplied path against the workspace and refuses escapes
// and .git internals.
Result<fs::path> resolve_workspace_path(const fs::path& canon_ws, const std::string& raw) {
    fs::path p(raw);
    fs::path abs = p.is_absolute() ? p : canon_ws / p;
    std::error_code ec;
    fs::path canon = fs::weakly_canonical(abs, ec);
    if (ec) {
        return make_error(ErrorCode::Sandbox, "cannot resolve path: " + raw);
    }
    if (!path_within(canon_ws, canon)) {
        return make_error(ErrorCode::Sandbox, "path escapes the workspace: " + raw);
    }
    fs::path rel = canon.lexically_relative(canon_ws);
    if (!rel.empty() && rel.begin()->string() == ".git") {
        return make_error(ErrorCode::Sandbox, "refusing to touch .git internals: " + raw);
    }
    return canon;
}

// Rejects `cd` targets that leave the workspace (absolute or relative).
Result<void> check_bash_sandbox(const fs::path& canon_ws, const std::string& command) {
    std::istringstream in(command);
    std::string tok;
    bool prev_was_cd = false;
    while (in >> tok) {
        // strip connective punctuation so "cd /x;" parses
        while (!tok.empty() && (tok.back() == ';' || tok.back() == ')')) tok.pop_back();
        if (prev_was_cd) {
            prev_was_cd = false;
            std::string target = tok;
            if (target.size() >= 2 && (target.front() == '"' || target.front() == '\'') &&
                target.back() == target.front()) {
                target = target.substr(1, target.size() - 2);
            }
            if (target.empty() || target == "-") continue;
            fs::path t(target);
            fs::path abs = t.is_absolute() ? t : canon_ws / t;
            std::error_code ec;
            fs::path canon = fs::weakly_canonical(abs, ec);
            if (ec || !path_within(canon_ws, canon)) {
                return make_error(ErrorCode::Sandbox,
                                  "cd target leaves the workspace: " + target);
            }
        }
        if (tok == "cd") prev_was_cd = true;
    }
    return {};
}

// When the registry lives inside the workspace, shield it from `git add -A`
// via the repo-local exclude file (never part of the tree).
void ensure_repo_exclude(const fs::path& canon_ws, const std::string& registry_dir) {
    std::error_code ec;
    fs::path reg = fs::weakly_canonical(
        fs::path(registry_dir).is_absolute() ? fs::path(registry_dir)
                                             : canon_ws / registry_dir,
        ec);
    if (ec || !path_within(canon_ws, reg) || reg == canon_ws) return;
    std::string line = "/" + reg.lexically_relative(canon_ws).generic_string() + "/";
    fs::path exclude = canon_ws / ".git" / "info" / "exclude";
    std::string existing;
    {
        std::ifstream in(exclude, std::ios::binary);
        if (in) {
            std::ostringstream buf;
            buf << in.rdbuf();
            existing = buf.str();
        }
    }
    if (existing.find(line) != std::string::npos) return;
    fs::create_directories(exclude.parent_path(), ec);
    std::ofstream out(exclude, std::ios::binary | std::ios::app);
    if (!existing.empty() && existing.back() != '\n') out << "\n";
    out << line << "\n";
}

std::string render_hints(const std::vector<LocationEntry>& hints) {
    if (hints.empty()) return "(no prior search hints)";
    std::string s;
    int i = 0;
    for (const LocationEntry& e : hints) {
        s += std::to_string(++i) + ". " + e.path + "::" + e.name;
        if (!e.rationale.empty()) s += " \xE2\x80\x94 " + e.rationale;
        s += "\n";
    }
    return s;
}

std::string render_assistant(const Reply& rep) {
    std::string s = rep.text;
    for (const ToolCall& c : rep.tool_calls) {
        if (!s.empty() && s.back() != '\n') s += '\n';
        s += "[tool_call] " + c.name + " " + c.args.dump();
    }
    return s;
}

struct ToolOutcome {
    bool ok = false;
    std::string observation;
    json extra = json::object();
};

ToolOutcome tool_bash(const fs::path& canon_ws, const EngineConfig& cfg, const json& args) {
    ToolOutcome out;
    auto cmd = arg_string(args, "command");
    if (!cmd.ok()) {
        out.observation = format_error(cmd.error());
        return out;
    }
    out.extra["command"] = cmd.value();
    if (auto guard = check_bash_sandbox(canon_ws, cmd.value()); !guard.ok()) {
        out.observation = format_error(guard.error());
        return out;
    }
    auto rr = run_shell(cmd.value(), canon_ws.string(), cfg.resolve.command_timeout_ms, {});
    if (!rr.ok()) {
        out.observation = format_error(rr.error());
        return out;
    }
    const RunResult& r = rr.value();
    out.observation = r.merged();
    if (r.timed_out) {
        out.observation += "\n[timed out after " +
                           std::to_string(cfg.resolve.command_timeout_ms) + " ms]";
    } else {
        out.observation += "\n[exit " + std::to_string(r.exit_code) + "]";
    }
    out.ok = !r.timed_out && r.exit_code == 0;
    out.extra["exit_code"] = r.exit_code;
    out.extra["timed_out"] = r.timed_out;
    return out;
}

ToolOutcome tool_read_file(const fs::path& canon_ws, const json& args) {
    ToolOutcome out;
    auto path = arg_string(args, "path");
    if (!path.ok()) {
        out.observation = format_error(path.error());
        return out;
    }
    out.extra["path"] = path.value();
    auto start = arg_opt_int(args, "start_line");
    auto end = arg_opt_int(args, "end_line");
    if (!start.ok() || !end.ok()) {
        out.observation = format_error((!start.ok() ? start.error() : end.error()));
        return out;
    }
    auto resolved = resolve_workspace_path(canon_ws, path.value());
    if (!resolved.ok()) {
        out.observation = format_error(resolved.error());
        return out;
    }
    std::ifstream in(resolved.value(), std::ios::binary);
    if (!in) {
        out.observation = "error[not-found]: cannot open " + path.value();
        return out;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::vector<std::string> lines = split_lines(buf.str());
    int lo = start.value().value_or(1);
    int hi = end.value().value_or(static_cast<int>(lines.size()));
    lo = std::max(1, lo);
    hi = std::min<int>(static_cast<int>(lines.size()), hi);
    std::string text;
    for (int i = lo; i <= hi; ++i) {
        text += std::to_string(i) + ": " + lines[i - 1] + "\n";
    }
    if (text.empty()) text = "(empty range)\n";
    out.observation = text;
    out.ok = true;
    return out;
}

ToolOutcome tool_create_file(const fs::path& canon_ws, const json& args) {
    ToolOutcome out;
    auto path = arg_string(args, "path");
    auto content = arg_string(args, "content", /*allow_empty=*/true);
    if (!path.ok() || !content.ok()) {
        out.observation = format_error((!path.ok() ? path.error() : content.error()));
        return out;
    }
    out.extra["path"] = path.value();
    auto resolved = resolve_workspace_path(canon_ws, path.value());
    if (!resolved.ok()) {
        out.observation = format_error(resolved.error());
        return out;
    }
    std::error_code ec;
    fs::create_directories(resolved.value().parent_path(), ec);
    std::ofstream f(resolved.value(), std::ios::binary | std::ios::trunc);
    if (!f) {
        out.observation = "error[io]: cannot write " + path.value();
        return out;
    }
    f << content.value();
    f.close();
    out.observation = "wrote " + path.value() + " (" +
                      std::to_string(content.value().size()) + " bytes)";
    out.ok = true;
    return out;
}

ToolOutcome tool_edit_file(const fs::path& canon_ws, const json& args) {
    ToolOutcome out;
    auto path = arg_string(args, "path");
    auto old_s = arg_string(args, "old_string");
    auto new_s = arg_string(args, "new_string", /*allow_empty=*/true);
    if (!path.ok() || !old_s.ok() || !new_s.ok()) {
        out.observation = format_error(!path.ok()    ? path.error()
                                       : !old_s.ok() ? old_s.error()
                                                     : new_s.error());
        return out;
    }
    out.extra["path"] = path.value();
    auto resolved = resolve_workspace_path(canon_ws, path.value());
    if (!resolved.ok()) {
        out.observation = format_error(resolved.error());
        return out;
    }
    std::ifstream in(resolved.value(), std::ios::binary);
    if (!in) {
        out.observation = "error[not-found]: cannot open " + path.value();
        return out;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    in.close();

    std::size_t count = 0;
    for (std::size_t pos = text.find(old_s.value()); pos != std::string::npos;
         pos = text.find(old_s.value(), pos + old_s.value().size())) {
        ++count;
    }
    if (count == 0) {
        out.observation = "edit rejected: old_string was not found in " + path.value();
        return out;
    }
    if (count > 1) {
        out.observation = "edit rejected: old_string occurs " + std::to_string(count) +
                          " times in " + path.value() + "; it must match exactly once";
        return out;
    }
    std::size_t pos = text.find(old_s.value());
    text.replace(pos, old_s.value().size(), new_s.value());
    std::ofstream f(resolved.value(), std::ios::binary | std::ios::trunc);
    f << text;
    f.close();
    out.observation = "edited " + path.value() + " (1 replacement)";
    out.ok = true;
    return out;
}

// Counts "diff --git" headers and "@@" hunk markers.
void count_diff_stats(const std::string& diff, int& files, int& hunks) {
    files = 0;
    hunks = 0;
    for (const std::string& line : split_lines(diff)) {
        if (line.rfind("diff --git", 0) == 0) ++files;
        if (line.rfind("@@", 0) == 0) ++hunks;
    }
}

// Re-applies the packaged diff onto the pristine commit in a scratch worktree
// and checks the resulting tree matches the submission tree byte for byte.
void verify_submission(GitRunner& git, SubmissionResult& sub) {
    auto want = git.rev_parse("HEAD^{tree}");
    if (!want.ok()) {
        sub.notes.push_back("verification skipped: " + want.error().message);
        return;
    }
    if (sub.diff.empty()) {
        auto base_tree = git.rev_parse(sub.original_hash + "^{tree}");
        sub.verified = base_tree.ok() && base_tree.value() == want.value();
        if (!sub.verified) sub.notes.push_back("empty diff but trees differ");
        return;
    }

    std::mt19937_64 rng(std::random_device{}());
    fs::path tmp = fs::temp_directory_path() /
                   ("scout-verify-" + std::to_string(::getpid()) + "-" +
                    std::to_string(rng() % 1000000));
    fs::path patch = tmp;
    patch += ".patch";
    {
        std::ofstream f(patch, std::ios::binary);
        f << sub.diff;
    }
    auto cleanup = [&]() {
        git.run_raw({"worktree", "remove", "--force", tmp.string()});
        git.run_raw({"worktree", "prune"});
        std::error_code ec;
        fs::remove(patch, ec);
        fs::remove_all(tmp, ec);
    };
    auto add = git.run({"worktree", "add", "--detach", tmp.string(), sub.original_hash});
    if (!add.ok()) {
        sub.notes.push_back("verification skipped: " + add.error().message);
        cleanup();
        return;
    }
    auto apply = git.run({"-C", tmp.string(), "apply", "--binary", patch.string()});
    if (!apply.ok()) {
        sub.notes.push_back("verification failed: diff does not apply cleanly: " +
                            apply.error().message);
        cleanup();
        return;
    }
    auto staged = git.run({"-C", tmp.string(), "add", "-A"});
    auto got = staged.ok() ? git.run({"-C", tmp.string(), "write-tree"})
                           : Result<std::string>(staged.error());
    if (!got.ok()) {
        sub.notes.push_back("verification failed: " + got.error().message);
        cleanup();
        return;
    }
    sub.verified = trim(got.value()) == want.value();
    if (!sub.verified) {
        sub.notes.push_back("verification failed: re-applied tree differs from submission");
    }
    cleanup();
}

}  // namespace

nlohmann::json derive_behavior_flags(const nlohmann::json& actions) {
    int creations = 0;
    int reverts = 0;
    bool expansion = false;
    if (actions.is_array()) {
        for (const json& a : actions) {
            if (!a.is_object() || !a.value("ok", false)) continue;
            const std::string tool = a.value("tool", "");
            const std::string command = a.value("command", "");
            if (tool == "hypothesis_git" &&
                (command == "start_hypothesis" || command == "revert_to")) {
                ++creations;
            }
            if (tool == "hypothesis_git" && command == "revert_to") ++reverts;
            if (tool == "hypothesis_plan" && command == "update_todo" &&
                a.value("grew_in_progress_list", false)) {
                expansion = true;
            }
        }
    }
    return json{{"multi_hypothesis", creations >= 2},
                {"reversion", reverts >= 1},
                {"expansion", expansion},
                {"branch_creations", creations},
                {"reversions", reverts}};
}

Result<SubmissionResult> finalize_submission(const std::string& workspace,
                                             WorkingMemoryState& memory, const EngineConfig& cfg,
                                             bool degraded) {
    SubmissionResult sub;
    sub.degraded = degraded;
    GitRunner git(workspace, cfg.git);

    if (memory.original_state_hash.empty()) {
        auto head = git.rev_parse("HEAD");
        if (!head.ok()) return head.error();
        memory.original_state_hash = head.value();
        sub.notes.push_back("base was never recorded; diffing against the entry HEAD");
    }
    sub.original_hash = memory.original_state_hash;

    // Merge the most promising branch when the agent never merged one.
    if (memory.merged_branch.empty()) {
        auto rank = [](ItemStatus s) {
            switch (s) {
                case ItemStatus::Successful: return 0;
                case ItemStatus::InProgress: return 1;
                case ItemStatus::Pending: return 2;
                default: return 3;
            }
        };
        const HypothesisRecord* best = nullptr;
        for (const HypothesisRecord& h : memory.hypotheses) {
            if (h.branch.empty()) continue;
            if (!best || rank(h.status) < rank(best->status)) best = &h;
        }
        if (best) {
            std::string branch = best->branch;
            std::string status = status_name(best->status);
            auto merged = git_merge_solution(workspace, memory, cfg.git, branch);
            if (!merged.ok()) return merged.error();
            sub.notes.push_back("auto-merged branch '" + branch + "' (" + status +
                                " hypothesis)");
        }
    }
    sub.merged_branch = memory.merged_branch;

    // Reproduction scripts never ship.
    std::error_code ec;
    fs::path ws = fs::weakly_canonical(fs::path(workspace), ec);
    std::vector<fs::path> repro;
    for (auto it = fs::recursive_directory_iterator(ws, ec);
         it != fs::recursive_directory_iterator(); ++it) {
        if (it->is_directory() && it->path().filename() == ".git") {
            it.disable_recursion_pending();
            continue;
        }
        if (it->is_regular_file() &&
            it->path().filename().string().rfind(cfg.resolve.repro_prefix, 0) == 0) {
            repro.push_back(it->path());
        }
    }
    for (const fs::path& p : repro) fs::remove(p, ec);
    if (!repro.empty()) {
        sub.notes.push_back("removed " + std::to_string(repro.size()) +
                            " reproduction script(s)");
    }

    // The test suite is not the agent's to change: restore it wholesale.
    auto probe = git.run_raw({"cat-file", "-e", sub.original_hash + ":tests"});
    if (probe.ok() && probe.value().exit_code == 0) {
        fs::remove_all(ws / "tests", ec);
        auto restore = git.run({"checkout", sub.original_hash, "--", "tests"});
        if (!restore.ok()) return restore.error();
        sub.notes.push_back("tests/ restored to the pristine state");
    }

    if (auto r = git.run({"add", "-A"}); !r.ok()) return r.error();
    if (auto r = git.run({"commit", "--allow-empty", "-m", "submission"}); !r.ok()) {
        return r.error();
    }
    auto head = git.rev_parse("HEAD");
    if (!head.ok()) return head.error();
    sub.commit_hash = head.value();

    // Raw capture: patch bytes must stay intact (the trimmed run() would strip
    // the final newline and corrupt the patch for git-apply).
    auto diff = git.run_raw({"diff", "--binary", sub.original_hash, "HEAD"});
    if (!diff.ok()) return diff.error();
    if (diff.value().exit_code != 0) {
        return make_error(ErrorCode::State,
                          "git diff failed (exit " + std::to_string(diff.value().exit_code) + ")");
    }
    sub.diff = diff.value().output;
    count_diff_stats(sub.diff, sub.files_changed, sub.hunks);

    verify_submission(git, sub);
    return sub;
}

Result<ResolutionOutcome> run_resolution(const std::string& workspace, LlmClient& client,
                                         const EngineConfig& cfg, const ResolutionTask& task,
                                         const std::string& registry_dir) {
    ResolutionOutcome out;
    out.instance_id = task.instance_id;
    if (trim(task.issue_description).empty()) {
        return make_error(ErrorCode::InvalidTask, "issue description is empty");
    }
    std::error_code ec;
    fs::path canon_ws = fs::canonical(fs::path(workspace), ec);
    if (ec) {
        return make_error(ErrorCode::NotFound, "workspace does not exist: " + workspace);
    }
    GitRunner git(canon_ws.string(), cfg.git);
    auto is_repo = git.is_repository();
    if (!is_repo.ok()) return is_repo.error();
    if (!is_repo.value()) {
        return make_error(ErrorCode::InvalidTask, "workspace is not a git checkout: " + workspace);
    }

    std::string registry = registry_dir.empty()
                               ? (canon_ws / cfg.paths.registry_dir).string()
                               : registry_dir;
    ensure_repo_exclude(canon_ws, registry);
    const std::string memory_path = registry_memory_path(registry, task.instance_id);

    auto loaded = load_memory(memory_path);
    if (loaded.ok()) {
        out.memory = loaded.take();
    } else if (loaded.error().code != ErrorCode::NotFound) {
        return loaded.error();
    }
    if (auto r = save_memory(out.memory, memory_path); !r.ok()) return r.error();

    const std::string& pd = cfg.paths.prompt_dir;
    auto sys = render_prompt(pd, "resolve_system",
                             {{"repro_prefix", cfg.resolve.repro_prefix},
                              {"max_turns", std::to_string(cfg.resolve.max_turns)}});
    if (!sys.ok()) return sys.error();
    auto inst = render_prompt(pd, "resolve_instance",
                              {{"issue_description", task.issue_description},
                               {"code_location_hints", render_hints(task.hints)}});
    if (!inst.ok()) return inst.error();
    auto submit_tmpl = load_prompt(pd, "resolve_submit");
    if (!submit_tmpl.ok()) return submit_tmpl.error();

    std::vector<Message> messages{{"system", sys.value()}, {"user", inst.value()}};
    json actions = json::array();
    std::vector<std::string> warnings;
    std::string summary;

    auto run_tool = [&](const ToolCall& call) -> ToolOutcome {
        if (call.name == "bash") return tool_bash(canon_ws, cfg, call.args);
        if (call.name == "read_file") return tool_read_file(canon_ws, call.args);
        if (call.name == "create_file") return tool_create_file(canon_ws, call.args);
        if (call.name == "edit_file") return tool_edit_file(canon_ws, call.args);
        ToolOutcome bad;
        bad.observation =
            "error[invalid-task]: unknown tool '" + call.name +
            "'; valid tools: bash, read_file, create_file, edit_file, hypothesis_plan, "
            "hypothesis_git, submit";
        return bad;
    };

    auto run_plan = [&](const json& args) -> ToolOutcome {
        ToolOutcome to;
        auto command = arg_string(args, "command");
        if (!command.ok()) {
            to.observation = format_error(command.error());
            return to;
        }
        to.extra["command"] = command.value();
        if (command.value() == "update_hypothesis") {
            auto md = arg_string(args, "hypotheses_markdown", true);
            if (!md.ok()) {
                to.observation = format_error(md.error());
                return to;
            }
            auto r = plan_update_hypothesis(out.memory, md.value());
            if (!r.ok()) {
                to.observation = format_error(r.error());
                return to;
            }
            to.ok = true;
            to.observation = r.value();
            return to;
        }
        if (command.value() == "update_todo") {
            auto hyp = arg_string(args, "current_hypothesis");
            auto md = arg_string(args, "todos_markdown", true);
            if (!hyp.ok() || !md.ok()) {
                to.observation = format_error(!hyp.ok() ? hyp.error() : md.error());
                return to;
            }
            auto r = plan_update_todo(out.memory, hyp.value(), md.value());
            if (!r.ok()) {
                to.observation = format_error(r.error());
                return to;
            }
            to.ok = true;
            to.observation = r.value().text;
            to.extra["grew_in_progress_list"] =
                r.value().grew && r.value().hypothesis_in_progress;
            return to;
        }
        if (command.value() == "log_insight") {
            auto insight = arg_string(args, "insight");
            if (!insight.ok()) {
                to.observation = format_error(insight.error());
                return to;
            }
            std::string hyp;
            if (args.contains("hypothesis") && args.at("hypothesis").is_string()) {
                hyp = args.at("hypothesis").get<std::string>();
            }
            auto r = plan_log_insight(out.memory, insight.value(), hyp);
            if (!r.ok()) {
                to.observation = format_error(r.error());
                return to;
            }
            to.ok = true;
            to.observation = r.value();
            return to;
        }
        to.observation = "error[invalid-task]: unknown hypothesis_plan command '" +
                         command.value() +
                         "'; valid: update_hypothesis, update_todo, log_insight";
        return to;
    };

    auto run_git_action = [&](const json& args) -> ToolOutcome {
        ToolOutcome to;
        auto command = arg_string(args, "command");
        if (!command.ok()) {
            to.observation = format_error(command.error());
            return to;
        }
        to.extra["command"] = command.value();
        const std::string& c = command.value();
        auto finish = [&](Result<GitActionResult> r) {
            if (!r.ok()) {
                to.observation = format_error(r.error());
                return;
            }
            to.ok = true;
            to.observation = r.value().message;
            if (!r.value().branch.empty()) to.extra["branch"] = r.value().branch;
            if (!r.value().new_hash.empty()) to.extra["hash"] = r.value().new_hash;
        };
        if (c == "init_base") {
            finish(git_init_base(canon_ws.string(), out.memory, cfg.git));
        } else if (c == "start_hypothesis") {
            auto b = arg_string(args, "branch_name");
            if (!b.ok()) {
                to.observation = format_error(b.error());
                return to;
            }
            finish(git_start_hypothesis(canon_ws.string(), out.memory, cfg.git, b.value()));
        } else if (c == "commit_todo") {
            auto todo = arg_string(args, "todo_content");
            auto msg = arg_string(args, "commit_message");
            if (!todo.ok() || !msg.ok()) {
                to.observation = format_error(!todo.ok() ? todo.error() : msg.error());
                return to;
            }
            finish(git_commit_todo(canon_ws.string(), out.memory, cfg.git, todo.value(),
                                   msg.value()));
        } else if (c == "revert_to") {
            auto sh = arg_string(args, "source_hypothesis");
            auto st = arg_string(args, "source_todo");
            auto nb = arg_string(args, "new_branch_name");
            if (!sh.ok() || !st.ok() || !nb.ok()) {
                to.observation =
                    format_error(!sh.ok() ? sh.error() : !st.ok() ? st.error() : nb.error());
                return to;
            }
            finish(git_revert_to(canon_ws.string(), out.memory, cfg.git, sh.value(), st.value(),
                                 nb.value()));
        } else if (c == "compare_hypotheses") {
            auto r = git_compare_hypotheses(canon_ws.string(), out.memory, cfg.git);
            if (!r.ok()) {
                to.observation = format_error(r.error());
                return to;
            }
            to.ok = true;
            to.observation = r.value();
        } else if (c == "merge_solution") {
            auto b = arg_string(args, "branch_name");
            if (!b.ok()) {
                to.observation = format_error(b.error());
                return to;
            }
            finish(git_merge_solution(canon_ws.string(), out.memory, cfg.git, b.value()));
        } else {
            to.observation = "error[invalid-task]: unknown hypothesis_git command '" + c +
                             "'; valid: init_base, start_hypothesis, commit_todo, revert_to, "
                             "compare_hypotheses, merge_solution";
        }
        return to;
    };

    bool transport_lost = false;
    while (out.turns_used < cfg.resolve.max_turns) {
        auto reply = client.complete(messages);
        if (!reply.ok()) {
            if (reply.error().code == ErrorCode::Transport) {
                transport_lost = true;
                out.aborted = true;
                out.abort_reason = reply.error().message;
                break;
            }
            return reply.error();
        }
        ++out.turns_used;
        const Reply& rep = reply.value();
        messages.push_back({"assistant", render_assistant(rep)});
        if (rep.tool_calls.empty()) {
            actions.push_back({{"turn", out.turns_used},
                               {"tool", ""},
                               {"ok", false},
                               {"error", "no tool call"}});
            messages.push_back({"user",
                                "Your reply contained no tool call. Use exactly one of: bash, "
                                "read_file, create_file, edit_file, hypothesis_plan, "
                                "hypothesis_git, submit."});
            continue;
        }
        if (rep.tool_calls.size() > 1) {
            warnings.push_back("turn " + std::to_string(out.turns_used) + " carried " +
                               std::to_string(rep.tool_calls.size()) +
                               " tool calls; only the first was executed");
        }
        const ToolCall& call = rep.tool_calls.front();
        if (call.name == "submit") {
            out.submitted = true;
            actions.push_back({{"turn", out.turns_used}, {"tool", "submit"}, {"ok", true}});
            break;
        }

        ToolOutcome to;
        if (call.name == "hypothesis_plan") {
            to = run_plan(call.args);
            if (to.ok) {
                if (auto r = save_memory(out.memory, memory_path); !r.ok()) return r.error();
            }
        } else if (call.name == "hypothesis_git") {
            to = run_git_action(call.args);
            if (to.ok) {
                if (auto r = save_memory(out.memory, memory_path); !r.ok()) return r.error();
            }
        } else {
            to = run_tool(call);
        }

        std::string obs = clamp_observation(to.observation, cfg.resolve.observation_limit);
        messages.push_back({"tool", obs});
        json record = {{"turn", out.turns_used},
                       {"tool", call.name},
                       {"ok", to.ok},
                       {"observation_chars", to.observation.size()}};
        for (auto& [k, v] : to.extra.items()) record[k] = v;
        actions.push_back(std::move(record));
    }

    // Package whatever exists; a missing submit (budget or transport) means a
    // degraded best-branch submission.
    auto packaged = finalize_submission(canon_ws.string(), out.memory, cfg, !out.submitted);
    if (packaged.ok()) {
        out.submission = packaged.take();
        if (auto r = save_memory(out.memory, memory_path); !r.ok()) return r.error();
    } else {
        out.aborted = true;
        if (!out.abort_reason.empty()) out.abort_reason += "; ";
        out.abort_reason += "packaging failed: " + packaged.error().message;
    }

    if (out.submitted && packaged.ok() && !transport_lost) {
        auto prompt = render_template(
            submit_tmpl.value(),
            {{"code_diff",
              clamp_observation(out.submission.diff, cfg.resolve.observation_limit)}});
        if (prompt.ok()) {
            messages.push_back({"user", prompt.value()});
            auto reply = client.complete(messages);
            if (reply.ok()) {
                summary = reply.value().text;
            } else if (reply.error().code == ErrorCode::Transport) {
                warnings.push_back("no closing summary: " + reply.error().message);
            } else {
                return reply.error();
            }
        }
    }

    json traj;
    traj["actions"] = actions;
    traj["turns_used"] = out.turns_used;
    traj["submitted"] = out.submitted;
    traj["degraded"] = out.submission.degraded;
    traj["flags"] = derive_behavior_flags(actions);
    traj["summary"] = summary;
    traj["warnings"] = warnings;
    traj["aborted"] = out.aborted;
    traj["abort_reason"] = out.abort_reason;
    traj["submission"] = {{"original_hash", out.submission.original_hash},
                          {"commit_hash", out.submission.commit_hash},
                          {"merged_branch", out.submission.merged_branch},
                          {"files_changed", out.submission.files_changed},
                          {"hunks", out.submission.hunks},
                          {"verified", out.submission.verified},
                          {"degraded", out.submission.degraded},
                          {"notes", out.submission.notes}};
    out.trajectory = std::move(traj);
    return out;
}

}  // namespace scout
