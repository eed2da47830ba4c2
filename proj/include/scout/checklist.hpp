// Markdown checklists with status tags, confidence annotations, and
// edit/test action suffixes, as exchanged by the planning tools.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scout/result.hpp"

namespace scout {

enum class ItemStatus { Pending, InProgress, Successful, Failed };

// "[ ]", "[-]", "[v]", "[!]"
std::string status_tag(ItemStatus status);
std::string status_name(ItemStatus status);  // "pending", "in_progress", ...
Result<ItemStatus> parse_status_tag(const std::string& tag);
Result<ItemStatus> parse_status_name(const std::string& name);

enum class ActionKind { Edit, Test };
std::string action_name(ActionKind kind);  // "edit" / "test"
Result<ActionKind> parse_action_name(const std::string& name);

struct ChecklistItem {
    ItemStatus status = ItemStatus::Pending;
    std::string text;  // everything after the tag, trimmed

    bool operator==(const ChecklistItem&) const = default;
};

struct ChecklistDocument {
    std::vector<ChecklistItem> items;
    std::string raw;  // source the document was parsed from / rendered to

    bool operator==(const ChecklistDocument& o) const { return items == o.items; }
};

// Every non-blank line must be `- [X] text` (the leading dash is optional).
// A recognizable item with a malformed tag is an error echoing the line.
Result<ChecklistDocument> parse_checklist(const std::string& text);

// Canonical form: one `- [X] text` line per item. parse(render(d)).items == d.items.
std::string render_checklist(const ChecklistDocument& doc);

// Splits a trailing `(confidence: 0.8)` annotation off an item text.
// The annotation is required and must lie in [0.1, 1.0].
struct ConfidenceSplit {
    std::string text;  // item text without the annotation, trimmed
    double confidence = 0.0;
};
Result<ConfidenceSplit> split_confidence(const std::string& item_text);

// Splits a required trailing `(edit)` / `(test)` action suffix off an item text.
struct ActionSplit {
    std::string text;
    ActionKind action = ActionKind::Edit;
};
Result<ActionSplit> split_action(const std::string& item_text);

// Splits `Name: content` into name and content; without a colon both are the
// full text. Used for hypothesis lines like `H1: null-check in parser`.
struct NameSplit {
    std::string name;
    std::string content;
};
NameSplit split_name(const std::string& item_text);

}  // namespace scout
