// The hypothesis_plan tool family: checklist-driven hypothesis and to-do
// bookkeeping plus insight logging, over working memory.
#pragma once

#include <string>

#include "scout/result.hpp"
#include "scout/working_memory.hpp"

namespace scout {

// Full-list semantics: the document is the complete hypothesis overview.
// Existing hypotheses are updated by name, new ones appended, order follows
// the document; omitting an existing hypothesis is rejected.
Result<std::string> plan_update_hypothesis(WorkingMemoryState& memory,
                                           const std::string& hypotheses_markdown);

struct PlanTodoResult {
    std::string text;                 // rendered to-do list for the agent
    bool grew = false;  // an existing list got longer (dynamic expansion)
    bool hypothesis_in_progress = false;
};

// Partial-list semantics: listed to-dos are updated by content, new ones
// appended in document order, unlisted ones left untouched.
Result<PlanTodoResult> plan_update_todo(WorkingMemoryState& memory,
                                        const std::string& current_hypothesis,
                                        const std::string& todos_markdown);

// Attaches the insight to the explicit hypothesis when given, otherwise to
// the first in_progress hypothesis, otherwise globally.
Result<std::string> plan_log_insight(WorkingMemoryState& memory, const std::string& insight,
                                     const std::string& hypothesis = "");

// Renders the current hypothesis overview (used as confirmation text).
std::string render_hypothesis_overview(const WorkingMemoryState& memory);

}  // namespace scout
