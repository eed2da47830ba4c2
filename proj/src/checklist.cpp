#include "scout/checklist.hpp"

#include <cstdio>
#include <cstdlib>

#include "scout/text.hpp"

namespace scout {

std::string status_tag(ItemStatus status) {
    switch (status) {
        case ItemStatus::Pending: return "[ ]";
        case ItemStatus::InProgress: return "[-]";
        case ItemStatus::Successful: return "[v]";
        case ItemStatus::Failed: return "[!]";
    }
    return "[ ]";
}

std::string status_name(ItemStatus status) {
    switch (status) {
        case ItemStatus::Pending: return "pending";
        case ItemStatus::InProgress: return "in_progress";
        case ItemStatus::Successful: return "successful";
        case ItemStatus::Failed: return "failed";
    }
    return "pending";
}

Result<ItemStatus> parse_status_tag(const std::string& tag) {
    if (tag == "[ ]") return ItemStatus::Pending;
    if (tag == "[-]") return ItemStatus::InProgress;
    if (tag == "[v]") return ItemStatus::Successful;
    if (tag == "[!]") return ItemStatus::Failed;
    return make_error(ErrorCode::Parse,
                                  "unknown status tag '" + tag + "' (expected [ ], [-], [v], [!])");
}

Result<ItemStatus> parse_status_name(const std::string& name) {
    if (name == "pending") return ItemStatus::Pending;
    if (name == "in_progress") return ItemStatus::InProgress;
    if (name == "successful") return ItemStatus::Successful;
    if (name == "failed") return ItemStatus::Failed;
    return make_error(ErrorCode::Schema, "unknown status name '" + name + "'");
}

std::string action_name(ActionKind kind) {
    return kind == ActionKind::Edit ? "edit" : "test";
}

Result<ActionKind> parse_action_name(const std::string& name) {
    if (name == "edit") return ActionKind::Edit;
    if (name == "test") return ActionKind::Test;
    return make_error(ErrorCode::Schema, "unknown action kind '" + name + "'");
}

Result<ChecklistDocument> parse_checklist(const std::string& text) {
    ChecklistDocument doc;
    doc.raw = text;
    for (const std::string& raw_line : split_lines(text)) {
        std::string line = trim(raw_line);
        if (line.empty()) continue;
        if (starts_with(line, "- ") || starts_with(line, "* ")) line = trim(line.substr(2));
        if (line.empty() || line[0] != '[' || line.size() < 3 || line[2] != ']') {
            return make_error(
                ErrorCode::Parse, "line is not a checklist item: '" + trim(raw_line) + "'");
        }
        auto status = parse_status_tag(line.substr(0, 3));
        if (!status.ok()) {
            return make_error(
                ErrorCode::Parse, status.error().message + " in line '" + trim(raw_line) + "'");
        }
        ChecklistItem item;
        item.status = status.value();
        item.text = trim(line.substr(3));
        doc.items.push_back(std::move(item));
    }
    return doc;
}

std::string render_checklist(const ChecklistDocument& doc) {
    std::string out;
    for (const ChecklistItem& item : doc.items) {
        out += "- " + status_tag(item.status) + " " + item.text + "\n";
    }
    return out;
}

Result<ConfidenceSplit> split_confidence(const std::string& item_text) {
    const std::string text = trim(item_text);
    const std::string marker = "(confidence:";
    auto open = text.rfind(marker);
    if (open == std::string::npos || text.empty() || text.back() != ')') {
        return make_error(
            ErrorCode::Parse,
            "missing '(confidence: <0.1-1.0>)' annotation in '" + text + "'");
    }
    std::string number = trim(text.substr(open + marker.size(),
                                          text.size() - 1 - (open + marker.size())));
    char* end = nullptr;
    double value = std::strtod(number.c_str(), &end);
    if (number.empty() || end != number.c_str() + number.size()) {
        return make_error(ErrorCode::Parse,
                                           "malformed confidence value '" + number + "'");
    }
    if (value < 0.1 || value > 1.0) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%g", value);
        return make_error(
            ErrorCode::Parse,
            std::string("confidence ") + buf + " outside the allowed range 0.1-1.0");
    }
    ConfidenceSplit split;
    split.text = trim(text.substr(0, open));
    split.confidence = value;
    return split;
}

Result<ActionSplit> split_action(const std::string& item_text) {
    const std::string text = trim(item_text);
    auto take = [&](const std::string& suffix, ActionKind kind) -> std::optional<ActionSplit> {
        if (text.size() >= suffix.size() &&
            text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0) {
            ActionSplit split;
            split.text = trim(text.substr(0, text.size() - suffix.size()));
            split.action = kind;
            return split;
        }
        return std::nullopt;
    };
    if (auto s = take("(edit)", ActionKind::Edit)) return *s;
    if (auto s = take("(test)", ActionKind::Test)) return *s;
    return make_error(
        ErrorCode::Parse, "missing required '(edit)' or '(test)' suffix in '" + text + "'");
}

NameSplit split_name(const std::string& item_text) {
    NameSplit split;
    auto colon = item_text.find(':');
    if (colon == std::string::npos) {
        split.name = trim(item_text);
        split.content = split.name;
    } else {
        split.name = trim(item_text.substr(0, colon));
        split.content = trim(item_text.substr(colon + 1));
        if (split.name.empty()) split.name = trim(item_text);
        if (split.content.empty()) split.content = split.name;
    }
    return split;
}

}  // namespace scout
