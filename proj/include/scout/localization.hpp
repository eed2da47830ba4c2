// Agent-directed localization: a budgeted tool-call loop over the search
// toolset, then a two-stage ranking — a shortlist from the conversation,
// re-ranked against full candidate sources under a byte budget.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "scout/client.hpp"
#include "scout/code_index.hpp"
#include "scout/config.hpp"
#include "scout/result.hpp"

namespace scout {

struct LocationEntry {
    std::string path;
    std::string name;     // dotted definition name
    std::string unit_id;  // resolved index id
    std::string rationale;
    bool operator==(const LocationEntry&) const = default;
};

struct LocalizationTask {
    std::string instance_id;
    std::string repo_name;
    std::string issue_description;
};

struct LocalizationOutcome {
    std::string instance_id;
    std::vector<LocationEntry> locations;  // final ranked order, best first
    nlohmann::json trajectory;
    int iterations_used = 0;
    int max_depth = 0;  // longest uninterrupted find_child_unit descent
    bool finish_called = false;
    // Soft abort: the run ended early (transport loss, unusable ranking) but
    // whatever was established is preserved.
    bool aborted = false;
    std::string abort_reason;
};

// Drives the whole flow against an already-built index.  Hard errors are
// reserved for misuse (empty issue, missing prompts, transcript drift);
// model trouble degrades to an aborted outcome instead.
Result<LocalizationOutcome> run_localization(const CodeIndex& index, LlmClient& client,
                                             const EngineConfig& cfg,
                                             const LocalizationTask& task);

// Parse a numbered ranking ("1. path::name — why") into entries resolved
// against the index.  Unresolvable or duplicate entries are dropped with a
// warning; an empty result is not an error (callers decide whether to retry).
std::vector<LocationEntry> parse_ranking(const CodeIndex& index, const std::string& text,
                                         std::vector<std::string>& warnings);

// The "{instance_id, locations, trajectory}" document emitted by the CLI.
nlohmann::json localization_to_json(const LocalizationOutcome& outcome);
Result<LocalizationOutcome> localization_from_json(const nlohmann::json& doc);

}  // namespace scout
