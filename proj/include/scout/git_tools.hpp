// High-level version-control actions wrapping fixed git command sequences,
// with working-memory bookkeeping and pinned commit identity for
// reproducible hashes.
#pragma once

#include <string>
#include <vector>

#include "scout/config.hpp"
#include "scout/result.hpp"
#include "scout/working_memory.hpp"

namespace scout {

struct GitActionResult {
    std::string action;
    std::string new_hash;   // when the action produced or moved to a commit
    std::string branch;     // branch touched, when any
    std::string message;    // human-readable confirmation for the agent
    std::vector<std::string> command_log;  // wrapped commands, for diagnostics
};

struct GitRawResult {
    int exit_code = 0;
    std::string output;  // stdout + stderr
};

// Thin wrapper running git in one workspace with deterministic identity and
// timestamps from GitConfig.
class GitRunner {
 public:
    GitRunner(std::string workspace, GitConfig cfg);

    const std::string& workspace() const { return workspace_; }

    // Runs git with the given arguments; on nonzero exit returns an error
    // embedding the captured output. Appends the rendered command to *log.
    Result<std::string> run(const std::vector<std::string>& args,
                            std::vector<std::string>* log = nullptr);
    // Like run(), but nonzero exit is reported in the result, not as an error.
    Result<GitRawResult> run_raw(const std::vector<std::string>& args,
                                 std::vector<std::string>* log = nullptr);

    Result<std::string> rev_parse(const std::string& ref);
    Result<bool> is_repository();
    Result<bool> branch_exists(const std::string& name);
    Result<std::string> current_branch();  // empty when detached

 private:
    std::string workspace_;
    GitConfig cfg_;
};

// Sanitizes to [a-z0-9._/-], collapsing runs of other characters to '-';
// truncated to 80 characters.
std::string sanitize_branch_name(const std::string& name);

// The hypothesis_git tool family. Each action runs its git sequence first
// and mutates memory only after every command succeeded, so a failed action
// leaves memory untouched. Callers persist memory afterwards.
Result<GitActionResult> git_init_base(const std::string& workspace, WorkingMemoryState& memory,
                                      const GitConfig& cfg);
Result<GitActionResult> git_start_hypothesis(const std::string& workspace,
                                             WorkingMemoryState& memory, const GitConfig& cfg,
                                             const std::string& branch_name);
Result<GitActionResult> git_commit_todo(const std::string& workspace, WorkingMemoryState& memory,
                                        const GitConfig& cfg, const std::string& todo_content,
                                        const std::string& commit_message);
Result<GitActionResult> git_revert_to(const std::string& workspace, WorkingMemoryState& memory,
                                      const GitConfig& cfg, const std::string& source_hypothesis,
                                      const std::string& source_todo,
                                      const std::string& new_branch_name);
Result<std::string> git_compare_hypotheses(const std::string& workspace,
                                           WorkingMemoryState& memory, const GitConfig& cfg);
Result<GitActionResult> git_merge_solution(const std::string& workspace,
                                           WorkingMemoryState& memory, const GitConfig& cfg,
                                           const std::string& branch_name);

}  // namespace scout
