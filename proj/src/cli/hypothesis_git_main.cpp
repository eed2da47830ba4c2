// hypothesis_git — high-level version-control actions for the resolution
// workflow: working base, hypothesis branches, per-todo checkpoints,
// reverts, comparison, and the solution merge.
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli_common.hpp"
#include "scout/git_tools.hpp"

using namespace scout;

int main(int argc, char** argv) {
    CLI::App app{
        "hypothesis_git — fixed git action sequences (working base, branches, "
        "checkpoints, reverts, merge) recorded in working memory"};
    app.require_subcommand(1);

    std::string registry, instance, workspace, config_path;
    auto add_context = [&](CLI::App* cmd) {
        cmd->add_option("--registry", registry,
                        "registry directory (default: $CODESCOUT_REGISTRY or "
                        ".codescout inside the workspace)");
        cmd->add_option("--instance", instance, "instance id (default: $CODESCOUT_INSTANCE)");
        cmd->add_option("--workspace", workspace,
                        "git checkout to act on (default: $CODESCOUT_WORKSPACE or .)");
        cmd->add_option("--config", config_path, "engine config JSON (commit identity)");
    };

    auto* init_base =
        app.add_subcommand("init_base", "record the original state and commit the working base");
    add_context(init_base);

    auto* start_hypothesis =
        app.add_subcommand("start_hypothesis", "branch off the working base for a hypothesis");
    std::string branch_name;
    start_hypothesis->add_option("--branch_name", branch_name, "new branch name")->required();
    add_context(start_hypothesis);

    auto* commit_todo =
        app.add_subcommand("commit_todo", "commit the workspace as one completed to-do");
    std::string todo_content, commit_message;
    commit_todo->add_option("--todo_content", todo_content, "to-do to mark completed")
        ->required();
    commit_todo->add_option("--commit_message", commit_message, "commit message")->required();
    add_context(commit_todo);

    auto* revert_to = app.add_subcommand(
        "revert_to", "start a new branch from an earlier to-do checkpoint");
    std::string source_hypothesis, source_todo, new_branch_name;
    revert_to->add_option("--source_hypothesis", source_hypothesis, "checkpoint owner")
        ->required();
    revert_to->add_option("--source_todo", source_todo, "checkpointed to-do")->required();
    revert_to->add_option("--new_branch_name", new_branch_name, "branch to create")
        ->required();
    add_context(revert_to);

    auto* compare =
        app.add_subcommand("compare_hypotheses", "report all hypotheses with diff statistics");
    add_context(compare);

    auto* merge_solution = app.add_subcommand(
        "merge_solution", "merge a hypothesis branch onto the original state");
    std::string merge_branch;
    merge_solution->add_option("--branch_name", merge_branch, "branch to merge")->required();
    add_context(merge_solution);

    CLI11_PARSE(app, argc, argv);

    auto cfg = cli::load_cli_config(config_path);
    if (!cfg.ok()) return cli::fail(cfg.error());
    if (workspace.empty()) workspace = cli::env_or("CODESCOUT_WORKSPACE", ".");
    const GitConfig& git_cfg = cfg.value().git;

    auto ctx = cli::open_context(registry, instance, workspace);
    if (!ctx.ok()) return cli::fail(ctx.error());
    auto memory = cli::open_memory(ctx.value());
    if (!memory.ok()) return cli::fail(memory.error());
    WorkingMemoryState& state = memory.value();

    std::string confirmation;
    if (init_base->parsed()) {
        auto r = git_init_base(workspace, state, git_cfg);
        if (!r.ok()) return cli::fail(r.error());
        confirmation = r.value().message;
    } else if (start_hypothesis->parsed()) {
        auto r = git_start_hypothesis(workspace, state, git_cfg, branch_name);
        if (!r.ok()) return cli::fail(r.error());
        confirmation = r.value().message;
    } else if (commit_todo->parsed()) {
        auto r = git_commit_todo(workspace, state, git_cfg, todo_content, commit_message);
        if (!r.ok()) return cli::fail(r.error());
        confirmation = r.value().message;
    } else if (revert_to->parsed()) {
        auto r = git_revert_to(workspace, state, git_cfg, source_hypothesis, source_todo,
                               new_branch_name);
        if (!r.ok()) return cli::fail(r.error());
        confirmation = r.value().message;
    } else if (compare->parsed()) {
        auto r = git_compare_hypotheses(workspace, state, git_cfg);
        if (!r.ok()) return cli::fail(r.error());
        confirmation = r.value();
    } else {
        auto r = git_merge_solution(workspace, state, git_cfg, merge_branch);
        if (!r.ok()) return cli::fail(r.error());
        confirmation = r.value().message;
    }

    if (auto saved = save_memory(state, ctx.value().memory_path); !saved.ok()) {
        return cli::fail(saved.error());
    }
    std::cout << confirmation << "\n";
    return 0;
}
