#include "scout/plan_tools.hpp"

#include <cstdio>
#include <set>

#include "scout/text.hpp"

namespace scout {

namespace {

std::string format_confidence(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", value);
    return buf;
}

struct HypothesisEntry {
    std::string name;
    std::string content;
    ItemStatus status;
    double confidence;
};

}  // namespace

std::string render_hypothesis_overview(const WorkingMemoryState& memory) {
    int pending = 0, in_progress = 0, successful = 0, failed = 0;
    std::string lines;
    for (const auto& h : memory.hypotheses) {
        switch (h.status) {
            case ItemStatus::Pending: ++pending; break;
            case ItemStatus::InProgress: ++in_progress; break;
            case ItemStatus::Successful: ++successful; break;
            case ItemStatus::Failed: ++failed; break;
        }
        lines += "- " + status_tag(h.status) + " " + h.name + ": " + h.content +
                 " (confidence: " + format_confidence(h.confidence) + ")";
        if (!h.branch.empty()) lines += " [branch " + h.branch + "]";
        lines += "\n";
    }
    std::string summary = std::to_string(memory.hypotheses.size()) + " hypotheses (" +
                          std::to_string(pending) + " pending, " + std::to_string(in_progress) +
                          " in progress, " + std::to_string(successful) + " successful, " +
                          std::to_string(failed) + " failed)\n";
    return summary + lines;
}

Result<std::string> plan_update_hypothesis(WorkingMemoryState& memory,
                                           const std::string& hypotheses_markdown) {
    auto doc = parse_checklist(hypotheses_markdown);
    if (!doc.ok()) return make_error(doc.error().code, doc.error().message);
    if (doc.value().items.empty())
        return make_error(ErrorCode::InvalidTask, "empty hypothesis document");

    std::vector<HypothesisEntry> entries;
    std::set<std::string> seen;
    for (const auto& item : doc.value().items) {
        auto conf = split_confidence(item.text);
        if (!conf.ok()) return make_error(conf.error().code, conf.error().message);
        NameSplit named = split_name(conf.value().text);
        if (named.name.empty())
            return make_error(ErrorCode::Parse,
                                           "hypothesis line has no name: '" + item.text + "'");
        if (!seen.insert(named.name).second)
            return make_error(ErrorCode::Conflict,
                                           "duplicate hypothesis name '" + named.name +
                                               "' in document");
        entries.push_back({named.name, named.content, item.status, conf.value().confidence});
    }

    // Validate everything before mutating, so a rejected document is a no-op.
    for (const auto& existing : memory.hypotheses) {
        if (!seen.count(existing.name))
            return make_error(
                ErrorCode::InvalidTask,
                "hypothesis '" + existing.name +
                    "' is missing from the document; removal is not supported — include every "
                    "existing hypothesis with its current status");
    }
    for (const auto& e : entries) {
        const HypothesisRecord* existing = memory.find_hypothesis(e.name);
        if (existing && !existing->branch.empty() && e.status == ItemStatus::Pending)
            return make_error(ErrorCode::InvalidTask,
                                           "hypothesis '" + e.name +
                                               "' already has branch '" + existing->branch +
                                               "' and cannot move back to pending");
    }

    std::vector<HypothesisRecord> updated;
    updated.reserve(entries.size());
    for (const auto& e : entries) {
        HypothesisRecord record;
        if (const HypothesisRecord* existing = memory.find_hypothesis(e.name)) {
            record = *existing;
        }
        record.name = e.name;
        record.content = e.content;
        record.status = e.status;
        record.confidence = e.confidence;
        updated.push_back(std::move(record));
    }
    memory.hypotheses = std::move(updated);
    memory.tick();
    return "hypothesis overview updated\n" + render_hypothesis_overview(memory);
}

Result<PlanTodoResult> plan_update_todo(WorkingMemoryState& memory,
                                        const std::string& current_hypothesis,
                                        const std::string& todos_markdown) {
    HypothesisRecord* h = memory.find_hypothesis(current_hypothesis);
    if (!h)
        return make_error(ErrorCode::NotFound,
                                          "no hypothesis named '" + current_hypothesis + "'");
    auto doc = parse_checklist(todos_markdown);
    if (!doc.ok()) return make_error(doc.error().code, doc.error().message);
    if (doc.value().items.empty())
        return make_error(ErrorCode::InvalidTask, "empty to-do document");

    struct TodoEntry {
        std::string content;
        ActionKind action;
        ItemStatus status;
    };
    std::vector<TodoEntry> entries;
    std::set<std::string> seen;
    for (const auto& item : doc.value().items) {
        auto action = split_action(item.text);
        if (!action.ok())
            return make_error(action.error().code, action.error().message);
        if (action.value().text.empty())
            return make_error(ErrorCode::Parse,
                                              "to-do line has no content: '" + item.text + "'");
        if (!seen.insert(action.value().text).second)
            return make_error(ErrorCode::Conflict,
                                              "duplicate to-do '" + action.value().text +
                                                  "' in document");
        entries.push_back({action.value().text, action.value().action, item.status});
    }
    for (const auto& e : entries) {
        const TodoRecord* existing = h->find_todo(e.content);
        if (existing && existing->checkpoint && e.status != ItemStatus::Successful &&
            e.status != ItemStatus::Failed) {
            return make_error(
                ErrorCode::InvalidTask,
                "to-do '" + e.content + "' has checkpoint " +
                    existing->checkpoint->hash.substr(0, 12) +
                    "; only successful or failed status is allowed once committed");
        }
    }

    std::size_t before = h->todos.size();
    for (const auto& e : entries) {
        if (TodoRecord* existing = h->find_todo(e.content)) {
            existing->action = e.action;
            existing->status = e.status;
        } else {
            TodoRecord t;
            t.content = e.content;
            t.action = e.action;
            t.status = e.status;
            h->todos.push_back(std::move(t));
        }
    }
    memory.tick();

    PlanTodoResult result;
    // Growth means an existing list got longer; the first population is not
    // an expansion of the plan.
    result.grew = before > 0 && h->todos.size() > before;
    result.hypothesis_in_progress = h->status == ItemStatus::InProgress;
    result.text = "to-do list for hypothesis '" + h->name + "' (" +
                  std::to_string(h->todos.size()) + " items)\n";
    for (const auto& t : h->todos) {
        result.text += "- " + status_tag(t.status) + " " + t.content + " (" +
                       action_name(t.action) + ")";
        if (t.checkpoint) result.text += " [checkpoint " + t.checkpoint->hash.substr(0, 12) + "]";
        result.text += "\n";
    }
    return result;
}

Result<std::string> plan_log_insight(WorkingMemoryState& memory, const std::string& insight,
                                     const std::string& hypothesis) {
    std::string text = trim(insight);
    if (text.empty())
        return make_error(ErrorCode::InvalidTask, "insight text is empty");
    std::string scope;
    if (!hypothesis.empty()) {
        if (!memory.find_hypothesis(hypothesis))
            return make_error(ErrorCode::NotFound,
                                           "no hypothesis named '" + hypothesis + "'");
        scope = hypothesis;
    } else {
        for (const auto& h : memory.hypotheses) {
            if (h.status == ItemStatus::InProgress) {
                scope = h.name;
                break;
            }
        }
    }
    Insight entry;
    entry.hypothesis = scope;
    entry.text = text;
    entry.timestamp = memory.tick();
    memory.insights.push_back(entry);
    if (scope.empty())
        return "insight recorded (global, t=" + std::to_string(entry.timestamp) + ")";
    return "insight recorded for hypothesis '" + scope + "' (t=" +
           std::to_string(entry.timestamp) + ")";
}

}  // namespace scout
