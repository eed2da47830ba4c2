// Engine configuration: tunable knobs for indexing, search, localization,
// resolution, and the git-backed planning tools.  Every default here is the
// value the engine ships with; a JSON config file can override any subset.
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "scout/result.hpp"

namespace scout {

struct FuzzyConfig {
    // Component weights for the blended similarity score (bigram Dice,
    // Jaro-Winkler, LCS ratio).  Must be non-negative and sum to > 0.
    std::array<double, 3> weights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    double jw_prefix_scale = 0.1;
    int jw_prefix_cap = 4;
};

struct SearchConfig {
    int max_hits = 10;
    int preview_lines_per_hit = 30;
    int response_line_budget = 120;
    // Ablation switch: return full unit source instead of budgeted previews.
    bool full_code = false;
    FuzzyConfig fuzzy;
};

struct IndexConfig {
    int chunk_lines = 200;
    int max_invoke_candidates = 3;
    int parse_threads = 4;
    std::vector<std::string> ignore_dirs{".git", "__pycache__", ".tox", ".venv",
                                         "venv", "node_modules", ".eggs"};
    // Language registry: file extension -> grammar id.
    std::map<std::string, std::string> languages{{".py", "python"}};
};

struct GitConfig {
    std::string author_name = "codescout";
    std::string author_email = "codescout@localhost";
    // Pinned timestamp so commit hashes are reproducible across runs.
    std::string commit_date = "2005-04-07T22:13:13 +0000";
    std::string stash_prefix = "codescout";
};

struct LocalizeConfig {
    int max_iterations = 20;
    int malformed_retry_limit = 1;
    int ranking_retry_limit = 1;
    int top_k = 5;
    // Byte budget for the stage-two full-source message.
    std::size_t stage_two_budget = 60000;
};

struct ResolveConfig {
    int max_turns = 75;
    std::size_t observation_limit = 10000;
    int command_timeout_ms = 120000;
    std::string repro_prefix = "repro_";
};

struct PathsConfig {
    // Prompt templates directory (editable config assets).
    std::string prompt_dir = "assets/prompts";
    // Shared registry of per-instance working-memory files; the
    // CODESCOUT_REGISTRY environment variable overrides this at the CLI.
    std::string registry_dir = ".codescout";
};

struct EvalConfig {
    int jobs = 1;  // instance worker pool size
    // Drop instances whose gold patch touches no existing function from the
    // function-level Acc@k denominator (they would score vacuously).
    bool exclude_empty_function_gold = true;
};

struct EngineConfig {
    IndexConfig index;
    SearchConfig search;
    GitConfig git;
    LocalizeConfig localize;
    ResolveConfig resolve;
    PathsConfig paths;
    EvalConfig eval;
};

// Parse a JSON config document, overriding defaults with any present keys.
// Unknown keys are ignored; type mismatches and invalid values are errors.
Result<EngineConfig> load_config(const std::string& json_text);
Result<EngineConfig> load_config_file(const std::string& path);

// Apply overrides from a parsed JSON object onto an existing config.
Result<void> apply_config(EngineConfig& cfg, const nlohmann::json& overrides);

// Serialize the effective configuration (sorted keys, 2-space indent).
std::string dump_config(const EngineConfig& cfg);

}  // namespace scout
