// Persistent per-instance registry binding hypotheses, to-dos, insights,
// branch names, and commit checkpoints, serialized as canonical JSON.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "scout/checklist.hpp"
#include "scout/result.hpp"

namespace scout {

struct Checkpoint {
    std::string hash;     // 40 lowercase hex
    std::string message;  // commit message

    bool operator==(const Checkpoint&) const = default;
};

struct TodoRecord {
    std::string content;
    ActionKind action = ActionKind::Edit;
    ItemStatus status = ItemStatus::Pending;
    std::optional<Checkpoint> checkpoint;

    bool operator==(const TodoRecord&) const = default;
};

struct HypothesisRecord {
    std::string name;
    std::string content;
    ItemStatus status = ItemStatus::Pending;
    double confidence = 0.1;
    std::string branch;       // empty until start_hypothesis / revert_to binds one
    std::string origin_hash;  // base or revert-source checkpoint; empty until branched
    std::vector<TodoRecord> todos;

    bool operator==(const HypothesisRecord&) const = default;

    TodoRecord* find_todo(const std::string& content);
    const TodoRecord* find_todo(const std::string& content) const;
};

struct Insight {
    std::string hypothesis;  // empty = global scope
    std::string text;
    std::int64_t timestamp = 0;  // logical counter, not wall clock

    bool operator==(const Insight&) const = default;
};

struct WorkingMemoryState {
    static constexpr int kSchemaVersion = 1;

    int schema_version = kSchemaVersion;
    std::string original_state_hash;  // empty until init_base
    std::string base_hash;            // empty until init_base
    std::string merged_branch;        // set by merge_solution
    std::vector<HypothesisRecord> hypotheses;  // ordered; names unique
    std::vector<Insight> insights;             // append-only log
    std::int64_t clock = 0;                    // logical timestamp source
    nlohmann::json extra = nlohmann::json::object();  // unknown fields, preserved

    bool operator==(const WorkingMemoryState&) const = default;

    HypothesisRecord* find_hypothesis(const std::string& name);
    const HypothesisRecord* find_hypothesis(const std::string& name) const;
    std::int64_t tick() { return ++clock; }
};

bool is_commit_hash(const std::string& s);

nlohmann::json memory_to_json(const WorkingMemoryState& state);
Result<WorkingMemoryState> memory_from_json(const nlohmann::json& j);

// Atomic save (write temp, rename); canonical key order and indentation so
// re-saving an unchanged state is byte-identical.
Result<void> save_memory(const WorkingMemoryState& state, const std::string& path);
Result<WorkingMemoryState> load_memory(const std::string& path);

// Records the checkpoint for (hypothesis, todo) exactly once.
Result<void> record_checkpoint(WorkingMemoryState& state, const std::string& hypothesis,
                               const std::string& todo_content, const std::string& hash,
                               const std::string& message);

// Resolves (hypothesis, todo content) to checkpoint metadata: exact content
// match first, then unique-prefix match; ambiguity is an error, not a guess.
Result<Checkpoint> lookup_checkpoint(const WorkingMemoryState& state,
                                     const std::string& hypothesis,
                                     const std::string& todo_content);

// Same exact-then-unique-prefix rule, but resolves to the todo itself.
Result<TodoRecord*> resolve_todo(HypothesisRecord& hypothesis, const std::string& content);

std::string registry_memory_path(const std::string& registry_dir, const std::string& instance_id);

}  // namespace scout
