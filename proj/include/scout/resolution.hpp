// The repair agent: a turn-budgeted tool loop (shell, file edits, planning,
// snapshot-backed git actions) over one workspace, ending in a packaged,
// verified submission diff.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "scout/client.hpp"
#include "scout/config.hpp"
#include "scout/localization.hpp"
#include "scout/result.hpp"
#include "scout/working_memory.hpp"

namespace scout {

struct ResolutionTask {
    std::string instance_id;
    std::string issue_description;
    std::vector<LocationEntry> hints;  // from localization, may be empty
};

struct SubmissionResult {
    std::string original_hash;  // pristine state the diff is computed against
    std::string commit_hash;    // the packaged "submission" commit
    std::string merged_branch;
    std::string diff;  // git diff --binary original..submission
    int files_changed = 0;
    int hunks = 0;
    bool verified = false;  // diff re-applied onto pristine == submission tree
    bool degraded = false;  // packaged without an explicit submit/merge
    std::vector<std::string> notes;
};

struct ResolutionOutcome {
    std::string instance_id;
    bool submitted = false;  // the agent reached submit()
    int turns_used = 0;
    SubmissionResult submission;
    WorkingMemoryState memory;  // final working memory
    nlohmann::json trajectory;  // action log, behavior flags, summary
    bool aborted = false;       // transport loss or packaging failure
    std::string abort_reason;
};

// Runs the agent in `workspace` (an existing git checkout).  Working memory
// is persisted under `registry_dir` after every planning/git action; when
// that directory sits inside the workspace it is shielded from commits via
// .git/info/exclude.  Model trouble degrades to a packaged best-effort
// submission rather than a hard error.
Result<ResolutionOutcome> run_resolution(const std::string& workspace, LlmClient& client,
                                         const EngineConfig& cfg, const ResolutionTask& task,
                                         const std::string& registry_dir);

// Packages the current solution: merges the best branch if none was merged,
// removes reproduction scripts, restores tests/ to the pristine state,
// commits, diffs against the pristine hash, and re-applies the diff in a
// scratch worktree to verify it reproduces the submission tree exactly.
Result<SubmissionResult> finalize_submission(const std::string& workspace,
                                             WorkingMemoryState& memory, const EngineConfig& cfg,
                                             bool degraded);

// Behavior flags recomputed from a raw action log (the same derivation the
// engine applies online, usable on stored trajectories).
nlohmann::json derive_behavior_flags(const nlohmann::json& actions);

}  // namespace scout
