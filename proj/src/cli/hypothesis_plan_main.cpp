// hypothesis_plan — checklist-driven hypothesis and to-do bookkeeping over
// the per-instance working memory, for agent tool-call observation windows.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli_common.hpp"
#include "scout/plan_tools.hpp"

using namespace scout;

namespace {

// Runs one mutation under the registry lock and persists the result.
int with_memory(const std::string& registry, const std::string& instance,
                const std::function<Result<std::string>(WorkingMemoryState&)>& op) {
    auto ctx = cli::open_context(registry, instance, "");
    if (!ctx.ok()) return cli::fail(ctx.error());
    auto memory = cli::open_memory(ctx.value());
    if (!memory.ok()) return cli::fail(memory.error());
    auto confirmation = op(memory.value());
    if (!confirmation.ok()) return cli::fail(confirmation.error());
    if (auto saved = save_memory(memory.value(), ctx.value().memory_path); !saved.ok()) {
        return cli::fail(saved.error());
    }
    std::cout << confirmation.value() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "hypothesis_plan — maintain the hypothesis overview, per-hypothesis "
        "to-do lists, and insights in working memory"};
    app.require_subcommand(1);

    std::string registry, instance;
    auto add_context = [&](CLI::App* cmd) {
        cmd->add_option("--registry", registry,
                        "registry directory (default: $CODESCOUT_REGISTRY or .codescout)");
        cmd->add_option("--instance", instance, "instance id (default: $CODESCOUT_INSTANCE)");
    };

    auto* update_hypothesis = app.add_subcommand(
        "update_hypothesis", "create or update the hypothesis overview checklist");
    std::string hypotheses_markdown;
    update_hypothesis
        ->add_option("--hypotheses_markdown", hypotheses_markdown,
                     "checklist: '- [tag] Name: content (confidence: 0.x)' lines")
        ->required();
    add_context(update_hypothesis);

    auto* update_todo =
        app.add_subcommand("update_todo", "create or update one hypothesis's to-do list");
    std::string current_hypothesis, todos_markdown;
    update_todo->add_option("--current_hypothesis", current_hypothesis, "hypothesis name")
        ->required();
    update_todo
        ->add_option("--todos_markdown", todos_markdown,
                     "checklist: '- [tag] step (edit|test)' lines")
        ->required();
    add_context(update_todo);

    auto* log_insight = app.add_subcommand("log_insight", "append an insight");
    std::string insight, hypothesis;
    log_insight->add_option("--insight", insight, "insight text")->required();
    log_insight->add_option("--hypothesis", hypothesis,
                            "attach to this hypothesis (default: current in-progress)");
    add_context(log_insight);

    CLI11_PARSE(app, argc, argv);

    if (update_hypothesis->parsed()) {
        return with_memory(registry, instance, [&](WorkingMemoryState& memory) {
            return plan_update_hypothesis(memory, hypotheses_markdown);
        });
    }
    if (update_todo->parsed()) {
        return with_memory(registry, instance, [&](WorkingMemoryState& memory) {
            auto r = plan_update_todo(memory, current_hypothesis, todos_markdown);
            if (!r.ok()) return Result<std::string>(r.error());
            return Result<std::string>(r.value().text);
        });
    }
    return with_memory(registry, instance, [&](WorkingMemoryState& memory) {
        return plan_log_insight(memory, insight, hypothesis);
    });
}
