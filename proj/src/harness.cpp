// Evaluation harness: spec loading, scripted pipeline runs, Acc@k / resolve
// rate scoring, trajectory analytics, and byte-stable replay comparison.
#include "scout/harness.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "scout/client.hpp"
#include "scout/code_index.hpp"
#include "scout/git_tools.hpp"
#include "scout/proc.hpp"
#include "scout/resolution.hpp"
#include "scout/text.hpp"

namespace scout {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

Result<std::string> read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return make_error(ErrorCode::Io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Scratch directory removed on scope exit, errors ignored.
struct ScratchDir {
    fs::path path;
    explicit ScratchDir(fs::path p) : path(std::move(p)) {}
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;
};

fs::path fresh_scratch_dir() {
    static std::atomic<unsigned> counter{0};
    return fs::temp_directory_path() /
           ("scout-eval-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter.fetch_add(1)));
}

// Resolves a spec-relative path against the spec file's directory.
std::string resolve_against(const fs::path& base_dir, const std::string& p) {
    if (p.empty()) return p;
    fs::path fp(p);
    if (fp.is_absolute()) return fp.lexically_normal().string();
    return (base_dir / fp).lexically_normal().string();
}

// Copies a fixture tree and turns it into a one-commit repository with the
// pinned identity, so the starting hash is identical on every run.
Result<std::string> stage_checkout(const fs::path& fixture, const fs::path& dest,
                                   const GitConfig& git_cfg) {
    std::error_code ec;
    fs::create_directories(dest.parent_path(), ec);
    fs::copy(fixture, dest, fs::copy_options::recursive, ec);
    if (ec) {
        return make_error(ErrorCode::Io,
                          "cannot copy fixture " + fixture.string() + ": " + ec.message());
    }
    GitRunner git(dest.string(), git_cfg);
    if (auto r = git.run({"init", "-q"}); !r.ok()) return r.error();
    if (auto r = git.run({"add", "-A"}); !r.ok()) return r.error();
    if (auto r = git.run({"commit", "-q", "-m", "initial"}); !r.ok()) return r.error();
    return git.rev_parse("HEAD");
}

bool instance_correct(const EvalRecord& r, int k, MatchLevel level) {
    if (level == MatchLevel::File) {
        std::vector<std::string> ranked_files;
        for (const LocationEntry& e : r.predicted) {
            if (std::find(ranked_files.begin(), ranked_files.end(), e.path) ==
                ranked_files.end()) {
                ranked_files.push_back(e.path);
            }
        }
        std::set<std::string> top(ranked_files.begin(),
                                  ranked_files.begin() +
                                      std::min<std::size_t>(ranked_files.size(), k));
        for (const std::string& gold : r.gold.files) {
            if (!top.count(gold)) return false;
        }
        return true;
    }
    std::set<std::pair<std::string, std::string>> top;
    for (std::size_t i = 0; i < r.predicted.size() && i < static_cast<std::size_t>(k); ++i) {
        top.emplace(r.predicted[i].path, r.predicted[i].name);
    }
    for (const GoldFunction& gold : r.gold.functions) {
        if (!top.count({gold.path, gold.name})) return false;
    }
    return true;
}

long long sum_observation_chars(const json& traj, const char* list_key) {
    long long total = 0;
    if (!traj.is_object() || !traj.contains(list_key)) return total;
    for (const json& step : traj.at(list_key)) {
        if (step.is_object() && step.contains("observation_chars")) {
            total += step.at("observation_chars").get<long long>();
        }
    }
    return total;
}

void bump(json& histogram, const std::string& key) {
    histogram[key] = histogram.value(key, 0) + 1;
}

}  // namespace

Result<InstanceSpec> load_instance_spec(const std::string& path) {
    auto text = read_text_file(path);
    if (!text.ok()) return text.error();
    json doc = json::parse(text.value(), nullptr, false);
    if (doc.is_discarded()) {
        return make_error(ErrorCode::Parse, "instance spec is not valid JSON: " + path);
    }
    fs::path base_dir = fs::path(path).parent_path();
    InstanceSpec spec;
    try {
        spec.instance_id = doc.at("instance_id").get<std::string>();
        spec.repo = resolve_against(base_dir, doc.at("repo").get<std::string>());
        spec.repo_name = doc.value("repo_name", fs::path(spec.repo).filename().string());
        if (doc.contains("issue_file")) {
            auto issue = read_text_file(resolve_against(base_dir, doc.at("issue_file")));
            if (!issue.ok()) return issue.error();
            spec.issue = issue.value();
        } else {
            spec.issue = doc.at("issue").get<std::string>();
        }
        if (doc.contains("gold")) {
            const json& gold = doc.at("gold");
            for (const json& f : gold.value("files", json::array())) {
                spec.gold.files.push_back(f.get<std::string>());
            }
            for (const json& fn : gold.value("functions", json::array())) {
                spec.gold.functions.push_back(
                    {fn.at("path").get<std::string>(), fn.at("name").get<std::string>()});
            }
        }
        spec.test_command = doc.value("test_command", "");
        spec.localize_transcript =
            resolve_against(base_dir, doc.value("localize_transcript", ""));
        spec.resolve_transcript = resolve_against(base_dir, doc.value("resolve_transcript", ""));
        spec.config_overrides = doc.value("config_overrides", json::object());
    } catch (const json::exception& e) {
        return make_error(ErrorCode::Schema,
                          "instance spec " + path + ": " + std::string(e.what()));
    }
    if (trim(spec.instance_id).empty()) {
        return make_error(ErrorCode::Schema, "instance spec has an empty instance_id: " + path);
    }
    return spec;
}

json record_to_json(const EvalRecord& r) {
    json gold_functions = json::array();
    for (const GoldFunction& f : r.gold.functions) {
        gold_functions.push_back({{"path", f.path}, {"name", f.name}});
    }
    json predicted = json::array();
    for (std::size_t i = 0; i < r.predicted.size(); ++i) {
        predicted.push_back({{"rank", i + 1},
                             {"path", r.predicted[i].path},
                             {"name", r.predicted[i].name},
                             {"unit_id", r.predicted[i].unit_id},
                             {"rationale", r.predicted[i].rationale}});
    }
    return json{
        {"instance_id", r.instance_id},
        {"gold", {{"files", r.gold.files}, {"functions", gold_functions}}},
        {"predicted", predicted},
        {"resolve", {{"has_outcome", r.has_resolve_outcome}, {"resolved", r.resolved}}},
        {"counters",
         {{"localize_iterations", r.localize_iterations},
          {"resolve_turns", r.resolve_turns},
          {"observation_chars", r.observation_chars},
          {"hypothesis_count", r.hypothesis_count}}},
        {"localization_trajectory", r.localization_trajectory},
        {"resolution_trajectory", r.resolution_trajectory},
        {"failures", r.failures},
    };
}

Result<EvalRecord> record_from_json(const json& doc) {
    EvalRecord r;
    try {
        r.instance_id = doc.at("instance_id").get<std::string>();
        for (const json& f : doc.at("gold").at("files")) {
            r.gold.files.push_back(f.get<std::string>());
        }
        for (const json& fn : doc.at("gold").at("functions")) {
            r.gold.functions.push_back(
                {fn.at("path").get<std::string>(), fn.at("name").get<std::string>()});
        }
        for (const json& p : doc.at("predicted")) {
            r.predicted.push_back(LocationEntry{p.at("path").get<std::string>(),
                                                p.at("name").get<std::string>(),
                                                p.value("unit_id", ""),
                                                p.value("rationale", "")});
        }
        r.has_resolve_outcome = doc.at("resolve").at("has_outcome").get<bool>();
        r.resolved = doc.at("resolve").at("resolved").get<bool>();
        const json& counters = doc.at("counters");
        r.localize_iterations = counters.at("localize_iterations").get<int>();
        r.resolve_turns = counters.at("resolve_turns").get<int>();
        r.observation_chars = counters.at("observation_chars").get<long long>();
        r.hypothesis_count = counters.at("hypothesis_count").get<int>();
        r.localization_trajectory = doc.value("localization_trajectory", json());
        r.resolution_trajectory = doc.value("resolution_trajectory", json());
        for (const json& f : doc.at("failures")) r.failures.push_back(f.get<std::string>());
    } catch (const json::exception& e) {
        return make_error(ErrorCode::Schema, "eval record: " + std::string(e.what()));
    }
    return r;
}

Result<std::vector<EvalRecord>> records_from_json(const json& doc) {
    const json* list = &doc;
    if (doc.is_object() && doc.contains("records")) list = &doc.at("records");
    if (!list->is_array()) {
        return make_error(ErrorCode::Schema, "expected an array of eval records");
    }
    std::vector<EvalRecord> records;
    for (const json& item : *list) {
        auto r = record_from_json(item);
        if (!r.ok()) return r.error();
        records.push_back(r.take());
    }
    return records;
}

Result<double> acc_at_k(const std::vector<EvalRecord>& records, int k, MatchLevel level,
                        bool exclude_empty_function_gold) {
    if (k < 1) return make_error(ErrorCode::InvalidQuery, "k must be at least 1");
    int total = 0;
    int correct = 0;
    for (const EvalRecord& r : records) {
        if (level == MatchLevel::File && r.gold.files.empty()) {
            return make_error(ErrorCode::Precondition,
                              "record '" + r.instance_id + "' has no gold files");
        }
        if (level == MatchLevel::Function && r.gold.functions.empty()) {
            if (exclude_empty_function_gold) continue;
            // Gold set empty: containment holds vacuously.
            ++total;
            ++correct;
            continue;
        }
        ++total;
        if (instance_correct(r, k, level)) ++correct;
    }
    if (total == 0) {
        return make_error(ErrorCode::Precondition, "undefined metric: no scorable records");
    }
    return static_cast<double>(correct) / total;
}

Result<double> resolve_rate(const std::vector<EvalRecord>& records,
                            std::vector<std::string>* warnings) {
    if (records.empty()) {
        return make_error(ErrorCode::Precondition, "undefined metric: no records");
    }
    int resolved = 0;
    for (const EvalRecord& r : records) {
        if (!r.has_resolve_outcome) {
            if (warnings) {
                warnings->push_back("instance '" + r.instance_id +
                                    "' has no resolve outcome; counted unresolved");
            }
            continue;
        }
        if (r.resolved) ++resolved;
    }
    return static_cast<double>(resolved) / records.size();
}

Result<EvalRecord> run_instance(const EngineConfig& cfg, const InstanceSpec& spec) {
    EvalRecord rec;
    rec.instance_id = spec.instance_id;
    rec.gold = spec.gold;

    EngineConfig local = cfg;
    if (spec.config_overrides.is_object() && !spec.config_overrides.empty()) {
        if (auto r = apply_config(local, spec.config_overrides); !r.ok()) {
            rec.failures.push_back("config: " + r.error().message);
            return rec;
        }
    }

    if (!fs::is_directory(spec.repo)) {
        return make_error(ErrorCode::NotFound, "fixture repo missing: " + spec.repo);
    }
    ScratchDir scratch(fresh_scratch_dir());
    fs::path work = scratch.path / "work";
    auto original = stage_checkout(spec.repo, work, local.git);
    if (!original.ok()) return original.error();

    auto index = index_repository(work.string(), local.index);
    if (!index.ok()) {
        rec.failures.push_back("index: " + index.error().message);
        return rec;
    }

    if (spec.localize_transcript.empty()) {
        rec.failures.push_back("locate: no transcript provided");
    } else if (auto turns = load_transcript(spec.localize_transcript); !turns.ok()) {
        rec.failures.push_back("locate: " + turns.error().message);
    } else {
        ScriptedClient client(turns.take());
        LocalizationTask task{spec.instance_id, spec.repo_name, spec.issue};
        auto outcome = run_localization(index.value(), client, local, task);
        if (!outcome.ok()) {
            rec.failures.push_back("locate: " + outcome.error().message);
        } else {
            rec.predicted = outcome.value().locations;
            rec.localize_iterations = outcome.value().iterations_used;
            rec.localization_trajectory = outcome.value().trajectory;
            if (outcome.value().aborted) {
                rec.failures.push_back("locate aborted: " + outcome.value().abort_reason);
            }
        }
    }

    bool packaged = false;
    SubmissionResult submission;
    if (spec.resolve_transcript.empty()) {
        rec.failures.push_back("resolve: no transcript provided");
    } else if (auto turns = load_transcript(spec.resolve_transcript); !turns.ok()) {
        rec.failures.push_back("resolve: " + turns.error().message);
    } else {
        ScriptedClient client(turns.take());
        ResolutionTask task{spec.instance_id, spec.issue, rec.predicted};
        fs::path registry = scratch.path / "registry";
        auto outcome = run_resolution(work.string(), client, local, task, registry.string());
        if (!outcome.ok()) {
            rec.failures.push_back("resolve: " + outcome.error().message);
        } else {
            rec.resolve_turns = outcome.value().turns_used;
            rec.hypothesis_count = static_cast<int>(outcome.value().memory.hypotheses.size());
            rec.resolution_trajectory = outcome.value().trajectory;
            submission = outcome.value().submission;
            packaged = true;
            if (outcome.value().aborted) {
                rec.failures.push_back("resolve aborted: " + outcome.value().abort_reason);
            }
        }
    }

    // Grade the patch the way the benchmark would: apply it onto a pristine
    // checkout and run the instance's test command there.
    if (packaged && !trim(spec.test_command).empty()) {
        fs::path fresh = scratch.path / "fresh";
        auto fresh_original = stage_checkout(spec.repo, fresh, local.git);
        if (!fresh_original.ok()) {
            rec.failures.push_back("grade: " + fresh_original.error().message);
        } else {
            if (fresh_original.value() != submission.original_hash) {
                rec.failures.push_back("grade: pristine checkout hash " +
                                       fresh_original.value() + " != submission base " +
                                       submission.original_hash);
            }
            bool applied = true;
            if (!submission.diff.empty()) {
                fs::path patch = scratch.path / "submission.patch";
                std::ofstream out(patch, std::ios::binary);
                out << submission.diff;
                out.close();
                GitRunner git(fresh.string(), local.git);
                auto apply = git.run_raw({"apply", "--binary", patch.string()});
                if (!apply.ok()) {
                    rec.failures.push_back("grade: " + apply.error().message);
                    applied = false;
                } else if (apply.value().exit_code != 0) {
                    rec.failures.push_back("grade: patch does not apply: " +
                                           trim(apply.value().output));
                    rec.has_resolve_outcome = true;  // graded: a broken patch is unresolved
                    applied = false;
                }
            }
            if (applied) {
                auto test = run_shell(spec.test_command, fresh.string(),
                                      local.resolve.command_timeout_ms);
                if (!test.ok()) {
                    rec.failures.push_back("grade: test command: " + test.error().message);
                } else {
                    rec.has_resolve_outcome = true;
                    rec.resolved = !test.value().timed_out && test.value().exit_code == 0;
                }
            }
        }
    }

    rec.observation_chars = sum_observation_chars(rec.localization_trajectory, "steps") +
                            sum_observation_chars(rec.resolution_trajectory, "actions");
    return rec;
}

json analyze_trajectories(const std::vector<EvalRecord>& records) {
    json action_frequencies = json::object();
    json depth_histogram = json::object();
    json hypothesis_histogram = json::object();
    int flagged = 0;
    int multi = 0, reversion = 0, expansion = 0;

    for (const EvalRecord& r : records) {
        const json& loc = r.localization_trajectory;
        if (loc.is_object()) {
            for (const json& step : loc.value("steps", json::array())) {
                std::string type = step.value("type", "");
                if (type == "tool") {
                    bump(action_frequencies, step.value("tool", "?"));
                } else if (type == "finish") {
                    bump(action_frequencies, "finish_search");
                }
            }
            bump(depth_histogram, std::to_string(loc.value("max_depth", 0)));
        }
        const json& res = r.resolution_trajectory;
        if (res.is_object()) {
            for (const json& action : res.value("actions", json::array())) {
                std::string key = action.value("tool", "?");
                if (action.contains("command")) {
                    key += ":" + action.at("command").get<std::string>();
                }
                bump(action_frequencies, key);
            }
            bump(hypothesis_histogram, std::to_string(r.hypothesis_count));
            if (res.contains("flags")) {
                ++flagged;
                const json& flags = res.at("flags");
                if (flags.value("multi_hypothesis", false)) ++multi;
                if (flags.value("reversion", false)) ++reversion;
                if (flags.value("expansion", false)) ++expansion;
            }
        }
    }

    json behavior = {{"instances", flagged},
                     {"counts",
                      {{"multi_hypothesis", multi},
                       {"reversion", reversion},
                       {"expansion", expansion}}}};
    if (flagged > 0) {
        behavior["prevalence"] = {
            {"multi_hypothesis", static_cast<double>(multi) / flagged},
            {"reversion", static_cast<double>(reversion) / flagged},
            {"expansion", static_cast<double>(expansion) / flagged}};
    } else {
        behavior["prevalence"] = json::object();
    }
    return json{{"instances", records.size()},
                {"action_frequencies", action_frequencies},
                {"max_depth_histogram", depth_histogram},
                {"hypothesis_count_histogram", hypothesis_histogram},
                {"behavior_flags", behavior}};
}

namespace {

json compute_metrics(const EngineConfig& cfg, const std::vector<EvalRecord>& records,
                     std::vector<std::string>& warnings) {
    json metrics;
    metrics["instances"] = records.size();
    const bool exclude = cfg.eval.exclude_empty_function_gold;
    for (MatchLevel level : {MatchLevel::File, MatchLevel::Function}) {
        const char* name = level == MatchLevel::File ? "file_acc" : "function_acc";
        json per_k = json::object();
        for (int k : {1, 3, 5}) {
            auto acc = acc_at_k(records, k, level, exclude);
            if (acc.ok()) {
                per_k[std::to_string(k)] = acc.value();
            } else {
                per_k[std::to_string(k)] = nullptr;
                warnings.push_back(std::string(name) + "@" + std::to_string(k) + ": " +
                                   acc.error().message);
            }
        }
        metrics[name] = per_k;
    }
    int function_scored = 0;
    int resolved_count = 0;
    for (const EvalRecord& r : records) {
        if (!r.gold.functions.empty() || !cfg.eval.exclude_empty_function_gold) {
            ++function_scored;
        }
        if (r.has_resolve_outcome && r.resolved) ++resolved_count;
    }
    metrics["function_scored"] = function_scored;
    metrics["resolved_count"] = resolved_count;
    auto rate = resolve_rate(records, &warnings);
    if (rate.ok()) {
        metrics["resolve_rate"] = rate.value();
    } else {
        metrics["resolve_rate"] = nullptr;
        warnings.push_back("resolve_rate: " + rate.error().message);
    }
    return metrics;
}

}  // namespace

Result<EvalReport> evaluate(const EngineConfig& cfg, const std::vector<InstanceSpec>& specs) {
    if (specs.empty()) {
        return make_error(ErrorCode::Precondition, "no instances to evaluate");
    }
    {
        std::set<std::string> ids;
        for (const InstanceSpec& s : specs) {
            if (!ids.insert(s.instance_id).second) {
                return make_error(ErrorCode::Conflict,
                                  "duplicate instance id: " + s.instance_id);
            }
        }
    }

    std::vector<EvalRecord> records(specs.size());
    auto run_one = [&](std::size_t i) {
        auto r = run_instance(cfg, specs[i]);
        if (r.ok()) {
            records[i] = r.take();
        } else {
            records[i].instance_id = specs[i].instance_id;
            records[i].gold = specs[i].gold;
            records[i].failures.push_back("instance: " + r.error().message);
        }
    };

    int jobs = std::clamp(cfg.eval.jobs, 1, static_cast<int>(specs.size()));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < specs.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int w = 0; w < jobs; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < specs.size();
                     i = next.fetch_add(1)) {
                    run_one(i);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    std::sort(records.begin(), records.end(),
              [](const EvalRecord& a, const EvalRecord& b) {
                  return a.instance_id < b.instance_id;
              });

    EvalReport report;
    report.records = std::move(records);
    report.metrics = compute_metrics(cfg, report.records, report.warnings);
    report.analytics = analyze_trajectories(report.records);
    return report;
}

json report_to_json(const EvalReport& report) {
    json records = json::array();
    for (const EvalRecord& r : report.records) records.push_back(record_to_json(r));
    return json{{"version", 1},
                {"records", records},
                {"metrics", report.metrics},
                {"analytics", report.analytics},
                {"warnings", report.warnings}};
}

Result<EvalReport> report_from_records(const EngineConfig& cfg, std::vector<EvalRecord> records) {
    if (records.empty()) {
        return make_error(ErrorCode::Precondition, "no records to report on");
    }
    std::sort(records.begin(), records.end(),
              [](const EvalRecord& a, const EvalRecord& b) {
                  return a.instance_id < b.instance_id;
              });
    EvalReport report;
    report.records = std::move(records);
    report.metrics = compute_metrics(cfg, report.records, report.warnings);
    report.analytics = analyze_trajectories(report.records);
    return report;
}

Result<ReplayResult> replay(const EngineConfig& cfg, const std::vector<InstanceSpec>& specs,
                            const json& baseline_report) {
    auto baseline_records = records_from_json(baseline_report);
    if (!baseline_records.ok()) return baseline_records.error();
    auto fresh = evaluate(cfg, specs);
    if (!fresh.ok()) return fresh.error();

    ReplayResult result;
    result.report = fresh.take();

    json baseline_array = json::array();
    for (const EvalRecord& r : baseline_records.value()) baseline_array.push_back(record_to_json(r));
    json fresh_array = json::array();
    for (const EvalRecord& r : result.report.records) fresh_array.push_back(record_to_json(r));

    std::string expected = baseline_array.dump(2);
    std::string actual = fresh_array.dump(2);
    if (expected == actual) {
        result.identical = true;
        return result;
    }
    result.identical = false;
    // Point at the first diverging instance, then the first differing bytes.
    std::size_t n = std::min(baseline_array.size(), fresh_array.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (baseline_array[i] != fresh_array[i]) {
            std::string a = baseline_array[i].dump(2);
            std::string b = fresh_array[i].dump(2);
            std::size_t at = 0;
            while (at < a.size() && at < b.size() && a[at] == b[at]) ++at;
            auto window = [&](const std::string& s) {
                std::size_t start = at > 40 ? at - 40 : 0;
                return s.substr(start, 80);
            };
            result.divergence = "instance '" +
                                baseline_array[i].value("instance_id", "?") +
                                "' diverges at byte " + std::to_string(at) +
                                ": baseline \"" + window(a) + "\" vs rerun \"" + window(b) +
                                "\"";
            return result;
        }
    }
    result.divergence = "record counts differ: baseline " +
                        std::to_string(baseline_array.size()) + " vs rerun " +
                        std::to_string(fresh_array.size());
    return result;
}

}  // namespace scout
