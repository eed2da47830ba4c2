// Desk-scale evaluation harness: instance specs, localization/resolution
// metrics (Acc@k, resolve rate), scripted end-to-end pipeline runs, and
// trajectory analytics over stored records.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "scout/config.hpp"
#include "scout/localization.hpp"
#include "scout/result.hpp"

namespace scout {

struct GoldFunction {
    std::string path;
    std::string name;  // dotted definition name, mirroring index ids
    bool operator==(const GoldFunction&) const = default;
};

// Ground truth distilled from an instance's reference patch.
struct GoldLocations {
    std::vector<std::string> files;
    std::vector<GoldFunction> functions;  // empty when the patch touches no existing function
};

// One evaluation instance: a fixture checkout, an issue, ground truth, the
// scripted transcripts that drive both agents, and the command that decides
// resolution. Relative paths in the spec file resolve against its directory.
struct InstanceSpec {
    std::string instance_id;
    std::string repo_name;  // shown to the agent; defaults to the fixture directory name
    std::string repo;       // fixture directory to copy into a scratch checkout
    std::string issue;
    GoldLocations gold;
    std::string test_command;  // run in the patched checkout; exit 0 = resolved
    std::string localize_transcript;
    std::string resolve_transcript;
    nlohmann::json config_overrides;  // engine-config fragment applied per instance
};

Result<InstanceSpec> load_instance_spec(const std::string& path);

// Everything measured about one instance run. Serialization is deterministic
// (no wall-clock times, no scratch paths) so replays compare byte-for-byte.
struct EvalRecord {
    std::string instance_id;
    GoldLocations gold;
    std::vector<LocationEntry> predicted;  // ranked, best first
    bool has_resolve_outcome = false;      // patch-apply + test-run happened
    bool resolved = false;
    int localize_iterations = 0;
    int resolve_turns = 0;
    long long observation_chars = 0;  // size counter summed over both agents
    int hypothesis_count = 0;
    nlohmann::json localization_trajectory;
    nlohmann::json resolution_trajectory;
    std::vector<std::string> failures;  // "<stage>: <what went wrong>"
};

nlohmann::json record_to_json(const EvalRecord& record);
Result<EvalRecord> record_from_json(const nlohmann::json& doc);
Result<std::vector<EvalRecord>> records_from_json(const nlohmann::json& doc);

enum class MatchLevel { File, Function };

// Fraction of records whose full gold set is contained in the top-k
// predictions. File level deduplicates prediction paths in rank order;
// function level matches (path, dotted name) pairs. With
// `exclude_empty_function_gold` (the default) records whose gold patch
// touches no existing function are dropped from the function-level
// denominator; with the flag off they count as vacuously correct.
// Empty record set (or empty after exclusion) → undefined-metric error.
Result<double> acc_at_k(const std::vector<EvalRecord>& records, int k, MatchLevel level,
                        bool exclude_empty_function_gold = true);

// Fraction of records whose submitted patch passed the instance tests.
// Records without a resolve outcome count as unresolved with a warning.
Result<double> resolve_rate(const std::vector<EvalRecord>& records,
                            std::vector<std::string>* warnings = nullptr);

// Copies the fixture into a scratch checkout, indexes it, replays the
// localization and resolution transcripts, re-applies the packaged diff onto
// a second pristine checkout, and runs the instance test command there.
// Stage failures land in the record's `failures`; only being unable to stage
// the fixture at all is a hard error.
Result<EvalRecord> run_instance(const EngineConfig& cfg, const InstanceSpec& spec);

// Aggregate statistics over stored trajectories: action-frequency
// distribution, instance histograms by max search depth and by hypothesis
// count, and behavior-flag prevalence. Empty input → empty report.
nlohmann::json analyze_trajectories(const std::vector<EvalRecord>& records);

struct EvalReport {
    std::vector<EvalRecord> records;  // sorted by instance id
    nlohmann::json metrics;
    nlohmann::json analytics;
    std::vector<std::string> warnings;
};

// Runs every instance (cfg.eval.jobs workers, per-instance isolation) and
// aggregates metrics + analytics. Record order and all aggregates are
// independent of scheduling.
Result<EvalReport> evaluate(const EngineConfig& cfg, const std::vector<InstanceSpec>& specs);

nlohmann::json report_to_json(const EvalReport& report);

// Recompute metrics + analytics from stored records (the `report` verb).
Result<EvalReport> report_from_records(const EngineConfig& cfg, std::vector<EvalRecord> records);

struct ReplayResult {
    bool identical = false;
    std::string divergence;  // empty when identical; else instance + first differing bytes
    EvalReport report;       // the fresh run
};

// Re-runs the suite and byte-compares the serialized records against a
// baseline report document.
Result<ReplayResult> replay(const EngineConfig& cfg, const std::vector<InstanceSpec>& specs,
                            const nlohmann::json& baseline_report);

}  // namespace scout
