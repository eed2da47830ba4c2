#include "scout/git_tools.hpp"

#include <algorithm>

#include "scout/proc.hpp"
#include "scout/text.hpp"

namespace scout {

namespace {

std::string render_command(const std::vector<std::string>& args) {
    std::string s = "git";
    for (const auto& a : args) {
        s += ' ';
        if (a.find(' ') != std::string::npos || a.empty()) {
            s += '\'' + a + '\'';
        } else {
            s += a;
        }
    }
    return s;
}

std::string short_hash(const std::string& hash) { return hash.substr(0, 12); }

}  // namespace

GitRunner::GitRunner(std::string workspace, GitConfig cfg)
    : workspace_(std::move(workspace)), cfg_(std::move(cfg)) {}

Result<GitRawResult> GitRunner::run_raw(const std::vector<std::string>& args,
                                        std::vector<std::string>* log) {
    std::map<std::string, std::string> env{
        {"GIT_AUTHOR_NAME", cfg_.author_name},     {"GIT_AUTHOR_EMAIL", cfg_.author_email},
        {"GIT_COMMITTER_NAME", cfg_.author_name},  {"GIT_COMMITTER_EMAIL", cfg_.author_email},
        {"GIT_AUTHOR_DATE", cfg_.commit_date},     {"GIT_COMMITTER_DATE", cfg_.commit_date},
        {"GIT_CONFIG_NOSYSTEM", "1"},              {"GIT_TERMINAL_PROMPT", "0"},
    };
    std::vector<std::string> argv{"git"};
    argv.insert(argv.end(), args.begin(), args.end());
    if (log) log->push_back(render_command(args));
    auto run = run_command(argv, workspace_, 60000, env);
    if (!run.ok()) return make_error(run.error().code, run.error().message);
    if (run.value().timed_out)
        return make_error(ErrorCode::Timeout,
                                        "git command timed out: " + render_command(args));
    GitRawResult out;
    out.exit_code = run.value().exit_code;
    out.output = run.value().merged();
    return out;
}

Result<std::string> GitRunner::run(const std::vector<std::string>& args,
                                   std::vector<std::string>* log) {
    auto raw = run_raw(args, log);
    if (!raw.ok()) return make_error(raw.error().code, raw.error().message);
    if (raw.value().exit_code != 0) {
        return make_error(
            ErrorCode::State, render_command(args) + " failed (exit " +
                                  std::to_string(raw.value().exit_code) + "): " +
                                  trim(raw.value().output));
    }
    return trim(raw.value().output);
}

Result<std::string> GitRunner::rev_parse(const std::string& ref) {
    return run({"rev-parse", ref});
}

Result<bool> GitRunner::is_repository() {
    auto raw = run_raw({"rev-parse", "--git-dir"});
    if (!raw.ok()) return make_error(raw.error().code, raw.error().message);
    return raw.value().exit_code == 0;
}

Result<bool> GitRunner::branch_exists(const std::string& name) {
    auto raw = run_raw({"rev-parse", "--verify", "--quiet", "refs/heads/" + name});
    if (!raw.ok()) return make_error(raw.error().code, raw.error().message);
    return raw.value().exit_code == 0;
}

Result<std::string> GitRunner::current_branch() {
    auto raw = run_raw({"symbolic-ref", "--short", "-q", "HEAD"});
    if (!raw.ok()) return make_error(raw.error().code, raw.error().message);
    if (raw.value().exit_code != 0) return std::string();  // detached
    return trim(raw.value().output);
}

std::string sanitize_branch_name(const std::string& name) {
    std::string out;
    bool pending_dash = false;
    for (char raw : name) {
        char c = raw;
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' || c == '_' ||
                  c == '/' || c == '-';
        if (ok) {
            if (pending_dash && !out.empty()) out += '-';
            pending_dash = false;
            out += c;
        } else {
            pending_dash = true;
        }
    }
    while (!out.empty() && (out.front() == '-' || out.front() == '/' || out.front() == '.')) {
        out.erase(out.begin());
    }
    while (!out.empty() && (out.back() == '-' || out.back() == '/' || out.back() == '.')) {
        out.pop_back();
    }
    if (out.size() > 80) out.resize(80);
    if (out.empty()) out = "hypothesis";
    return out;
}

namespace {

// Checks the branch name is already in sanitized form; otherwise errors with
// a deterministic suggestion. On collision, suggests the first free -N.
Result<void> check_branch_name(GitRunner& g, const std::string& name) {
    std::string sanitized = sanitize_branch_name(name);
    if (sanitized != name) {
        return make_error(ErrorCode::InvalidTask,
                                "invalid branch name '" + name +
                                    "' (allowed: [a-z0-9._/-], max 80 chars); suggestion: '" +
                                    sanitized + "'");
    }
    auto exists = g.branch_exists(name);
    if (!exists.ok()) return make_error(exists.error().code, exists.error().message);
    if (exists.value()) {
        std::string suggestion = name + "-2";
        for (int i = 2; i < 100; ++i) {
            suggestion = name + "-" + std::to_string(i);
            auto taken = g.branch_exists(suggestion);
            if (taken.ok() && !taken.value()) break;
        }
        return make_error(ErrorCode::Conflict, "branch '" + name +
                                                         "' already exists; suggestion: '" +
                                                         suggestion + "'");
    }
    return Result<void>();
}

// The hypothesis the next branch should bind to: the in_progress hypothesis
// that has no branch yet.
Result<HypothesisRecord*> branch_target(WorkingMemoryState& memory) {
    std::vector<HypothesisRecord*> in_progress;
    std::vector<HypothesisRecord*> unbound;
    for (auto& h : memory.hypotheses) {
        if (h.status == ItemStatus::InProgress) {
            in_progress.push_back(&h);
            if (h.branch.empty()) unbound.push_back(&h);
        }
    }
    if (in_progress.empty())
        return make_error(
            ErrorCode::Precondition,
            "no in_progress hypothesis; mark one with '[-]' via hypothesis_plan "
            "update_hypothesis first");
    if (unbound.empty())
        return make_error(
            ErrorCode::Precondition,
            "every in_progress hypothesis already has a branch; mark a new one in progress first");
    if (unbound.size() > 1) {
        std::string names;
        for (auto* h : unbound) {
            if (!names.empty()) names += ", ";
            names += "'" + h->name + "'";
        }
        return make_error(
            ErrorCode::Ambiguous, "multiple in_progress hypotheses without a branch: " + names);
    }
    return unbound.front();
}

std::string stash_label(const GitConfig& cfg, const std::string& branch, std::int64_t counter) {
    return cfg.stash_prefix + ":" + branch + ":" + std::to_string(counter);
}

}  // namespace

Result<GitActionResult> git_init_base(const std::string& workspace, WorkingMemoryState& memory,
                                      const GitConfig& cfg) {
    GitRunner g(workspace, cfg);
    GitActionResult result;
    result.action = "init_base";

    auto repo = g.is_repository();
    if (!repo.ok()) return make_error(repo.error().code, repo.error().message);
    if (!repo.value())
        return make_error(ErrorCode::State,
                                           "workspace is not a git repository: " + workspace);
    if (!memory.base_hash.empty())
        return make_error(
            ErrorCode::Conflict, "base already initialized (working base " +
                                     short_hash(memory.base_hash) + "); init_base runs once");

    auto step = g.run({"config", "user.name", cfg.author_name}, &result.command_log);
    if (!step.ok()) return make_error(step.error().code, step.error().message);
    step = g.run({"config", "user.email", cfg.author_email}, &result.command_log);
    if (!step.ok()) return make_error(step.error().code, step.error().message);

    auto original = g.run({"rev-parse", "HEAD"}, &result.command_log);
    if (!original.ok())
        return make_error(original.error().code,
                                           "cannot read original state: " + original.error().message);
    step = g.run({"add", "-A"}, &result.command_log);
    if (!step.ok()) return make_error(step.error().code, step.error().message);
    step = g.run({"commit", "--allow-empty", "-m", "working base: original state plus reproduction artifacts"},
                 &result.command_log);
    if (!step.ok()) return make_error(step.error().code, step.error().message);
    auto base = g.run({"rev-parse", "HEAD"}, &result.command_log);
    if (!base.ok()) return make_error(base.error().code, base.error().message);

    memory.original_state_hash = original.value();
    memory.base_hash = base.value();
    memory.tick();

    result.new_hash = base.value();
    result.message = "original state " + short_hash(original.value()) +
                     " and shared working base " + short_hash(base.value()) +
                     " recorded; hypothesis branches fork from the working base";
    return result;
}

Result<GitActionResult> git_start_hypothesis(const std::string& workspace,
                                             WorkingMemoryState& memory, const GitConfig& cfg,
                                             const std::string& branch_name) {
    GitRunner g(workspace, cfg);
    GitActionResult result;
    result.action = "start_hypothesis";

    if (memory.base_hash.empty())
        return make_error(ErrorCode::Precondition,
                                           "working base not initialized; run init_base first");
    auto name_ok = check_branch_name(g, branch_name);
    if (!name_ok.ok())
        return make_error(name_ok.error().code, name_ok.error().message);
    auto target = branch_target(memory);
    if (!target.ok())
        return make_error(target.error().code, target.error().message);

    auto step = g.run({"stash", "push", "-u", "-m",
                       stash_label(cfg, branch_name, memory.clock + 1)},
                      &result.command_log);
    if (!step.ok()) return make_error(step.error().code, step.error().message);
    step = g.run({"checkout", memory.base_hash}, &result.command_log);
    if (!step.ok()) return make_error(step.error().code, step.error().message);
    step = g.run({"checkout", "-b", branch_name}, &result.command_log);
    if (!step.ok()) return make_error(step.error().code, step.error().message);

    HypothesisRecord* h = target.value();
    h->branch = branch_name;
    h->origin_hash = memory.base_hash;
    memory.tick();

    result.new_hash = memory.base_hash;
    result.branch = branch_name;
    result.message = "branch '" + branch_name + "' created at working base " +
                     short_hash(memory.base_hash) + " and bound to hypothesis '" + h->name +
                     "'; workspace is now on that branch";
    return result;
}

Result<GitActionResult> git_commit_todo(const std::string& workspace, WorkingMemoryState& memory,
                                        const GitConfig& cfg, const std::string& todo_content,
                                        const std::string& commit_message) {
    GitRunner g(workspace, cfg);
    GitActionResult result;
    result.action = "commit_todo";

    auto branch = g.current_branch();
    if (!branch.ok())
        return make_error(branch.error().code, branch.error().message);
    if (branch.value().empty())
        return make_error(
            ErrorCode::State, "HEAD is detached; start_hypothesis or revert_to a branch first");
    HypothesisRecord* h = nullptr;
    for (auto& cand : memory.hypotheses) {
        if (cand.branch == branch.value()) h = &cand;
    }
    if (!h)
        return make_error(ErrorCode::State,
                                           "current branch '" + branch.value() +
                                               "' is not bound to any hypothesis");
    if (h->status != ItemStatus::InProgress)
        return make_error(ErrorCode::Precondition,
                                           "hypothesis '" + h->name + "' is " +
                                               status_name(h->status) + ", not in_progress");
    auto todo = resolve_todo(*h, todo_content);
    if (!todo.ok()) return make_error(todo.error().code, todo.error().message);
    if (todo.value()->checkpoint)
        return make_error(
            ErrorCode::Conflict, "todo '" + todo.value()->content + "' already has checkpoint " +
                                     short_hash(todo.value()->checkpoint->hash) +
                                     "; one to-do maps to exactly one commit");
    if (trim(commit_message).empty())
        return make_error(ErrorCode::InvalidTask, "commit message is empty");

    auto step = g.run({"add", "-A"}, &result.command_log);
    if (!step.ok()) return make_error(step.error().code, step.error().message);
    step = g.run({"commit", "--allow-empty", "-m", commit_message}, &result.command_log);
    if (!step.ok()) return make_error(step.error().code, step.error().message);
    auto hash = g.run({"rev-parse", "HEAD"}, &result.command_log);
    if (!hash.ok()) return make_error(hash.error().code, hash.error().message);

    auto record = record_checkpoint(memory, h->name, todo.value()->content, hash.value(),
                                    commit_message);
    if (!record.ok())
        return make_error(record.error().code, record.error().message);
    memory.tick();

    result.new_hash = hash.value();
    result.branch = branch.value();
    result.message = "checkpoint " + short_hash(hash.value()) + " committed for todo '" +
                     todo.value()->content + "' on branch '" + branch.value() + "'";
    return result;
}

Result<GitActionResult> git_revert_to(const std::string& workspace, WorkingMemoryState& memory,
                                      const GitConfig& cfg, const std::string& source_hypothesis,
                                      const std::string& source_todo,
                                      const std::string& new_branch_name) {
    GitRunner g(workspace, cfg);
    GitActionResult result;
    result.action = "revert_to";

    auto checkpoint = lookup_checkpoint(memory, source_hypothesis, source_todo);
    if (!checkpoint.ok())
        return make_error(checkpoint.error().code, checkpoint.error().message);
    auto name_ok = check_branch_name(g, new_branch_name);
    if (!name_ok.ok())
        return make_error(name_ok.error().code, name_ok.error().message);
    auto target = branch_target(memory);
    if (!target.ok())
        return make_error(target.error().code, target.error().message);

    auto step = g.run({"stash", "push", "-u", "-m",
                       stash_label(cfg, new_branch_name, memory.clock + 1)},
                      &result.command_log);
    if (!step.ok()) return make_error(step.error().code, step.error().message);
    step = g.run({"checkout", checkpoint.value().hash}, &result.command_log);
    if (!step.ok()) return make_error(step.error().code, step.error().message);
    step = g.run({"checkout", "-b", new_branch_name}, &result.command_log);
    if (!step.ok()) return make_error(step.error().code, step.error().message);

    HypothesisRecord* h = target.value();
    h->branch = new_branch_name;
    h->origin_hash = checkpoint.value().hash;
    memory.tick();

    result.new_hash = checkpoint.value().hash;
    result.branch = new_branch_name;
    result.message = "workspace reverted to checkpoint " + short_hash(checkpoint.value().hash) +
                     " ('" + source_todo + "' under '" + source_hypothesis + "'); new branch '" +
                     new_branch_name + "' bound to hypothesis '" + h->name + "'";
    return result;
}

Result<std::string> git_compare_hypotheses(const std::string& workspace,
                                           WorkingMemoryState& memory, const GitConfig& cfg) {
    GitRunner g(workspace, cfg);
    if (memory.hypotheses.empty())
        return make_error(ErrorCode::Precondition,
                                       "no hypotheses recorded; nothing to compare");
    std::string report = "hypothesis comparison (diffs are against the original state";
    if (!memory.original_state_hash.empty())
        report += " " + short_hash(memory.original_state_hash);
    report += ")\n";
    char buf[64];
    for (const auto& h : memory.hypotheses) {
        report += "\nhypothesis '" + h.name + "' " + status_tag(h.status) + " " +
                  status_name(h.status) + "\n";
        std::snprintf(buf, sizeof buf, "%g", h.confidence);
        report += "  content: " + h.content + "\n";
        report += "  confidence: " + std::string(buf) + "\n";
        if (h.branch.empty()) {
            report += "  branch: (no branch — never started)\n";
        } else {
            report += "  branch: " + h.branch + "\n";
        }
        report += "  todos:\n";
        if (h.todos.empty()) report += "    (none)\n";
        for (const auto& t : h.todos) {
            report += "    - " + status_tag(t.status) + " " + t.content + " (" +
                      action_name(t.action) + ")";
            if (t.checkpoint) {
                report += " — checkpoint " + short_hash(t.checkpoint->hash) + " '" +
                          t.checkpoint->message + "'";
            }
            report += "\n";
        }
        if (!h.branch.empty() && !h.origin_hash.empty()) {
            auto commits = g.run({"log", "--format=%h %s", h.origin_hash + ".." + h.branch});
            if (commits.ok()) {
                report += "  commits:\n";
                auto lines = split_lines(commits.value());
                if (commits.value().empty()) {
                    report += "    (none)\n";
                } else {
                    for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
                        report += "    " + *it + "\n";
                    }
                }
            }
        }
        if (!h.branch.empty() && !memory.original_state_hash.empty()) {
            auto shortstat =
                g.run({"diff", "--shortstat", memory.original_state_hash, h.branch});
            if (shortstat.ok()) {
                report += "  diff vs original: " +
                          (shortstat.value().empty() ? "(no changes)" : shortstat.value()) + "\n";
            }
            auto numstat = g.run({"diff", "--numstat", memory.original_state_hash, h.branch});
            if (numstat.ok() && !numstat.value().empty()) {
                for (const auto& line : split_lines(numstat.value())) {
                    report += "    " + line + "\n";
                }
            }
        }
        bool any_insight = false;
        for (const auto& i : memory.insights) {
            if (i.hypothesis == h.name) {
                if (!any_insight) report += "  insights:\n";
                any_insight = true;
                report += "    - " + i.text + "\n";
            }
        }
    }
    bool any_global = false;
    for (const auto& i : memory.insights) {
        if (i.hypothesis.empty()) {
            if (!any_global) report += "\nglobal insights:\n";
            any_global = true;
            report += "  - " + i.text + "\n";
        }
    }
    return report;
}

Result<GitActionResult> git_merge_solution(const std::string& workspace,
                                           WorkingMemoryState& memory, const GitConfig& cfg,
                                           const std::string& branch_name) {
    GitRunner g(workspace, cfg);
    GitActionResult result;
    result.action = "merge_solution";

    if (memory.original_state_hash.empty())
        return make_error(ErrorCode::Precondition,
                                           "original state unknown; run init_base first");
    auto exists = g.branch_exists(branch_name);
    if (!exists.ok())
        return make_error(exists.error().code, exists.error().message);
    if (!exists.value())
        return make_error(ErrorCode::NotFound,
                                           "unknown branch '" + branch_name + "'");
    const HypothesisRecord* bound = nullptr;
    for (const auto& h : memory.hypotheses) {
        if (h.branch == branch_name) bound = &h;
    }
    if (!bound)
        return make_error(
            ErrorCode::NotFound, "branch '" + branch_name + "' is not bound to any hypothesis");

    auto step = g.run({"stash", "push", "-u", "-m",
                       stash_label(cfg, branch_name, memory.clock + 1)},
                      &result.command_log);
    if (!step.ok()) return make_error(step.error().code, step.error().message);
    step = g.run({"checkout", "--detach", memory.original_state_hash}, &result.command_log);
    if (!step.ok()) return make_error(step.error().code, step.error().message);

    auto merge = g.run_raw({"merge", branch_name, "-m",
                            "merge hypothesis branch " + branch_name},
                           &result.command_log);
    if (!merge.ok()) return make_error(merge.error().code, merge.error().message);
    if (merge.value().exit_code != 0) {
        auto conflicts = g.run({"diff", "--name-only", "--diff-filter=U"});
        std::string paths = conflicts.ok() ? trim(conflicts.value()) : "";
        std::replace(paths.begin(), paths.end(), '\n', ' ');
        return make_error(
            ErrorCode::Conflict,
            "merge of '" + branch_name + "' conflicts" +
                (paths.empty() ? "" : " in: " + paths) +
                "; resolve the conflicts in the workspace, then commit and retry submission");
    }
    auto head = g.run({"rev-parse", "HEAD"}, &result.command_log);
    if (!head.ok()) return make_error(head.error().code, head.error().message);

    memory.merged_branch = branch_name;
    memory.tick();

    result.new_hash = head.value();
    result.branch = branch_name;
    result.message = "branch '" + branch_name + "' merged onto the original state " +
                     short_hash(memory.original_state_hash) + "; workspace is patch-ready at " +
                     short_hash(head.value());
    return result;
}

}  // namespace scout
