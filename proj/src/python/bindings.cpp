// Python bindings for the engine's main operations.  JSON crosses the
// boundary as strings; the `codescout` package wrapper parses them into
// dicts so the native module stays free of Python-object plumbing.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "scout/client.hpp"
#include "scout/code_index.hpp"
#include "scout/config.hpp"
#include "scout/harness.hpp"
#include "scout/localization.hpp"
#include "scout/resolution.hpp"

namespace py = pybind11;
using namespace scout;
using nlohmann::json;

namespace {

template <typename T>
T unwrap(Result<T> result) {
    if (!result.ok()) throw std::runtime_error(result.error().render());
    return result.take();
}

void unwrap_void(Result<void> result) {
    if (!result.ok()) throw std::runtime_error(result.error().render());
}

EngineConfig config_from(const std::string& config_json) {
    if (config_json.empty()) return EngineConfig{};
    return unwrap(load_config(config_json));
}

std::unique_ptr<LlmClient> client_from(const std::string& transcript_path) {
    return std::unique_ptr<LlmClient>(
        new ScriptedClient(unwrap(load_transcript(transcript_path))));
}

std::vector<InstanceSpec> specs_from(const std::vector<std::string>& paths) {
    std::vector<InstanceSpec> specs;
    for (const std::string& p : paths) specs.push_back(unwrap(load_instance_spec(p)));
    return specs;
}

std::vector<EvalRecord> records_from(const std::string& records_json) {
    json doc = json::parse(records_json, nullptr, false);
    if (doc.is_discarded()) throw std::runtime_error("records text is not valid JSON");
    return unwrap(records_from_json(doc));
}

std::string py_index_repository(const std::string& root, const std::string& config_json) {
    EngineConfig cfg = config_from(config_json);
    return serialize_index(unwrap(index_repository(root, cfg.index)));
}

std::string py_locate(const std::string& root, const std::string& issue,
                      const std::string& transcript_path, const std::string& instance_id,
                      const std::string& repo_name, const std::string& config_json) {
    EngineConfig cfg = config_from(config_json);
    CodeIndex index = unwrap(index_repository(root, cfg.index));
    auto client = client_from(transcript_path);
    LocalizationTask task{instance_id, repo_name, issue};
    if (task.repo_name.empty()) {
        task.repo_name = std::filesystem::path(index.root).filename().string();
    }
    return localization_to_json(unwrap(run_localization(index, *client, cfg, task))).dump(2);
}

std::string py_resolve(const std::string& workspace, const std::string& issue,
                       const std::string& transcript_path, const std::string& instance_id,
                       const std::string& registry_dir, const std::string& hints_json,
                       const std::string& config_json) {
    EngineConfig cfg = config_from(config_json);
    ResolutionTask task{instance_id, issue, {}};
    if (!hints_json.empty()) {
        json doc = json::parse(hints_json, nullptr, false);
        if (doc.is_discarded()) throw std::runtime_error("hints text is not valid JSON");
        task.hints = unwrap(localization_from_json(doc)).locations;
    }
    auto client = client_from(transcript_path);
    ResolutionOutcome outcome =
        unwrap(run_resolution(workspace, *client, cfg, task, registry_dir));
    json doc{{"instance_id", outcome.instance_id}, {"submitted", outcome.submitted},
             {"turns_used", outcome.turns_used},   {"aborted", outcome.aborted},
             {"abort_reason", outcome.abort_reason}, {"diff", outcome.submission.diff},
             {"trajectory", outcome.trajectory}};
    return doc.dump(2);
}

std::string py_evaluate(const std::vector<std::string>& spec_paths,
                        const std::string& config_json) {
    EngineConfig cfg = config_from(config_json);
    return report_to_json(unwrap(evaluate(cfg, specs_from(spec_paths)))).dump(2);
}

std::string py_replay(const std::vector<std::string>& spec_paths,
                      const std::string& baseline_json, const std::string& config_json) {
    EngineConfig cfg = config_from(config_json);
    json baseline = json::parse(baseline_json, nullptr, false);
    if (baseline.is_discarded()) throw std::runtime_error("baseline text is not valid JSON");
    ReplayResult result = unwrap(replay(cfg, specs_from(spec_paths), baseline));
    return json{{"identical", result.identical}, {"divergence", result.divergence}}.dump(2);
}

std::string py_report(const std::string& records_json, const std::string& config_json) {
    EngineConfig cfg = config_from(config_json);
    return report_to_json(unwrap(report_from_records(cfg, records_from(records_json)))).dump(2);
}

double py_acc_at_k(const std::string& records_json, int k, const std::string& level,
                   bool exclude_empty_function_gold) {
    MatchLevel match;
    if (level == "file") {
        match = MatchLevel::File;
    } else if (level == "function") {
        match = MatchLevel::Function;
    } else {
        throw std::runtime_error("level must be 'file' or 'function'");
    }
    return unwrap(acc_at_k(records_from(records_json), k, match, exclude_empty_function_gold));
}

py::tuple py_resolve_rate(const std::string& records_json) {
    std::vector<std::string> warnings;
    double rate = unwrap(resolve_rate(records_from(records_json), &warnings));
    return py::make_tuple(rate, warnings);
}

std::string py_default_config() {
    return dump_config(EngineConfig{});
}

}  // namespace

PYBIND11_MODULE(_codescout, m) {
    m.doc() = "Definition-level code indexing, issue localization, and checkpointed "
              "issue resolution (native core)";
    m.def("index_repository", &py_index_repository, py::arg("root"),
          py::arg("config_json") = "",
          "Index a repository; returns the index document as a JSON string.");
    m.def("locate", &py_locate, py::arg("root"), py::arg("issue"),
          py::arg("transcript_path"), py::arg("instance_id") = "local",
          py::arg("repo_name") = "", py::arg("config_json") = "",
          "Run scripted localization over a repository; returns "
          "{instance_id, locations, trajectory} as a JSON string.");
    m.def("resolve", &py_resolve, py::arg("workspace"), py::arg("issue"),
          py::arg("transcript_path"), py::arg("instance_id") = "local",
          py::arg("registry_dir") = "", py::arg("hints_json") = "",
          py::arg("config_json") = "",
          "Run scripted resolution in a git workspace; returns the outcome "
          "(submission diff, trajectory) as a JSON string.");
    m.def("evaluate", &py_evaluate, py::arg("spec_paths"), py::arg("config_json") = "",
          "Run instance specs end to end; returns the evaluation report as a JSON string.");
    m.def("replay", &py_replay, py::arg("spec_paths"), py::arg("baseline_json"),
          py::arg("config_json") = "",
          "Re-run specs and byte-compare against a baseline report; returns "
          "{identical, divergence} as a JSON string.");
    m.def("report", &py_report, py::arg("records_json"), py::arg("config_json") = "",
          "Recompute metrics and analytics from stored records; returns the report "
          "as a JSON string.");
    m.def("acc_at_k", &py_acc_at_k, py::arg("records_json"), py::arg("k"),
          py::arg("level") = "file", py::arg("exclude_empty_function_gold") = true,
          "Accuracy@k over serialized records at 'file' or 'function' level.");
    m.def("resolve_rate", &py_resolve_rate, py::arg("records_json"),
          "Resolve rate over serialized records; returns (rate, warnings).");
    m.def("default_config", &py_default_config,
          "The engine's default configuration as a JSON string.");
}
