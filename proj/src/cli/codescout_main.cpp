// codescout — end-to-end command line: index a repository, run the
// localization and resolution agents, and evaluate/replay/report scripted
// instance suites.
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_common.hpp"
#include "json.hpp"
#include "scout/client.hpp"
#include "scout/code_index.hpp"
#include "scout/harness.hpp"
#include "scout/localization.hpp"
#include "scout/resolution.hpp"

using namespace scout;
using nlohmann::json;

namespace {

struct ClientOptions {
    std::string transcript;
    std::string http_url;
    std::string http_path = "/v1/complete";
    std::string model;
    std::string api_key_env;
    int timeout_s = 120;
};

void add_client_options(CLI::App* cmd, ClientOptions& opts) {
    cmd->add_option("--transcript", opts.transcript,
                    "scripted transcript JSON (deterministic replay client)");
    cmd->add_option("--http-url", opts.http_url,
                    "chat endpoint base URL (live client instead of a transcript)");
    cmd->add_option("--http-path", opts.http_path, "endpoint path");
    cmd->add_option("--model", opts.model, "model name sent to the endpoint");
    cmd->add_option("--api-key-env", opts.api_key_env,
                    "environment variable holding the bearer token");
    cmd->add_option("--timeout", opts.timeout_s, "request timeout, seconds");
}

Result<std::unique_ptr<LlmClient>> make_client(const ClientOptions& opts) {
    if (!opts.transcript.empty()) {
        auto turns = load_transcript(opts.transcript);
        if (!turns.ok()) return turns.error();
        return std::unique_ptr<LlmClient>(new ScriptedClient(turns.take()));
    }
    if (!opts.http_url.empty()) {
        HttpClientConfig cfg;
        cfg.base_url = opts.http_url;
        cfg.path = opts.http_path;
        cfg.model = opts.model;
        cfg.timeout_s = opts.timeout_s;
        if (!opts.api_key_env.empty()) cfg.api_key = cli::env_or(opts.api_key_env.c_str(), "");
        return std::unique_ptr<LlmClient>(new HttpClient(cfg));
    }
    return make_error(ErrorCode::InvalidTask, "no client: pass --transcript or --http-url");
}

Result<std::vector<InstanceSpec>> load_specs(const std::vector<std::string>& paths) {
    std::vector<InstanceSpec> specs;
    for (const std::string& p : paths) {
        auto s = load_instance_spec(p);
        if (!s.ok()) return s.error();
        specs.push_back(s.take());
    }
    return specs;
}

json resolution_to_json(const ResolutionOutcome& outcome) {
    return json{{"instance_id", outcome.instance_id},
                {"submitted", outcome.submitted},
                {"turns_used", outcome.turns_used},
                {"aborted", outcome.aborted},
                {"abort_reason", outcome.abort_reason},
                {"diff", outcome.submission.diff},
                {"trajectory", outcome.trajectory}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"codescout — definition-level code indexing, issue localization, "
                 "and checkpointed issue resolution"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "engine config JSON");
        cmd->add_option("--out", out_path, "output file (default: stdout)");
    };

    // index
    auto* index_cmd = app.add_subcommand("index", "build the definition-level index");
    std::string root;
    index_cmd->add_option("--root", root, "repository root")->required();
    add_common(index_cmd);

    // locate
    auto* locate_cmd =
        app.add_subcommand("locate", "run the localization agent over an indexed repository");
    std::string locate_root, index_file, issue_file, instance_id = "local", repo_name;
    ClientOptions locate_client;
    locate_cmd->add_option("--root", locate_root, "repository root (indexed on the fly)");
    locate_cmd->add_option("--index", index_file, "prebuilt index JSON (skips indexing)");
    locate_cmd->add_option("--issue", issue_file, "issue description file")->required();
    locate_cmd->add_option("--instance-id", instance_id, "instance id for the output");
    locate_cmd->add_option("--repo-name", repo_name, "repository name shown to the agent");
    add_client_options(locate_cmd, locate_client);
    add_common(locate_cmd);

    // resolve
    auto* resolve_cmd =
        app.add_subcommand("resolve", "run the resolution agent in a git workspace");
    std::string workspace, hints_file, registry, patch_out;
    ClientOptions resolve_client;
    resolve_cmd->add_option("--workspace", workspace, "git checkout to repair")->required();
    resolve_cmd->add_option("--issue", issue_file, "issue description file")->required();
    resolve_cmd->add_option("--hints", hints_file, "localization output JSON for hints");
    resolve_cmd->add_option("--instance-id", instance_id, "instance id");
    resolve_cmd->add_option("--registry", registry,
                            "working-memory registry (default: $CODESCOUT_REGISTRY or "
                            ".codescout inside the workspace)");
    resolve_cmd->add_option("--patch", patch_out, "also write the raw diff here");
    add_client_options(resolve_cmd, resolve_client);
    add_common(resolve_cmd);

    // evaluate / replay / report
    auto* evaluate_cmd =
        app.add_subcommand("evaluate", "run instance specs end to end and score them");
    std::vector<std::string> spec_paths;
    int jobs = 0;
    evaluate_cmd->add_option("--spec", spec_paths, "instance spec JSON (repeatable)")
        ->required();
    evaluate_cmd->add_option("--jobs", jobs, "worker pool size (overrides config)");
    add_common(evaluate_cmd);

    auto* replay_cmd = app.add_subcommand(
        "replay", "re-run instance specs and byte-compare records against a baseline");
    std::string baseline_path;
    replay_cmd->add_option("--spec", spec_paths, "instance spec JSON (repeatable)")
        ->required();
    replay_cmd->add_option("--baseline", baseline_path, "baseline report JSON")->required();
    replay_cmd->add_option("--jobs", jobs, "worker pool size (overrides config)");
    add_common(replay_cmd);

    auto* report_cmd =
        app.add_subcommand("report", "recompute metrics and analytics from stored records");
    std::string records_path;
    report_cmd->add_option("--records", records_path, "report or records JSON")->required();
    add_common(report_cmd);

    CLI11_PARSE(app, argc, argv);

    auto cfg = cli::load_cli_config(config_path);
    if (!cfg.ok()) return cli::fail(cfg.error());
    EngineConfig engine = cfg.take();

    if (index_cmd->parsed()) {
        auto index = index_repository(root, engine.index);
        if (!index.ok()) return cli::fail(index.error());
        auto w = cli::write_output(out_path, serialize_index(index.value()));
        return w.ok() ? 0 : cli::fail(w.error());
    }

    if (locate_cmd->parsed()) {
        if (index_file.empty() && locate_root.empty()) {
            return cli::fail(make_error(ErrorCode::InvalidTask, "pass --root or --index"));
        }
        Result<CodeIndex> index = index_file.empty()
                                      ? index_repository(locate_root, engine.index)
                                      : load_index_file(index_file);
        if (!index.ok()) return cli::fail(index.error());
        auto issue = cli::read_file(issue_file);
        if (!issue.ok()) return cli::fail(issue.error());
        auto client = make_client(locate_client);
        if (!client.ok()) return cli::fail(client.error());
        if (repo_name.empty()) {
            repo_name = std::filesystem::path(index.value().root).filename().string();
        }
        LocalizationTask task{instance_id, repo_name, issue.value()};
        auto outcome = run_localization(index.value(), *client.value(), engine, task);
        if (!outcome.ok()) return cli::fail(outcome.error());
        auto w = cli::write_output(out_path, localization_to_json(outcome.value()).dump(2));
        return w.ok() ? 0 : cli::fail(w.error());
    }

    if (resolve_cmd->parsed()) {
        auto issue = cli::read_file(issue_file);
        if (!issue.ok()) return cli::fail(issue.error());
        ResolutionTask task{instance_id, issue.value(), {}};
        if (!hints_file.empty()) {
            auto hints_text = cli::read_file(hints_file);
            if (!hints_text.ok()) return cli::fail(hints_text.error());
            json doc = json::parse(hints_text.value(), nullptr, false);
            if (doc.is_discarded()) {
                return cli::fail(make_error(ErrorCode::Parse, "hints file is not valid JSON"));
            }
            auto parsed = localization_from_json(doc);
            if (!parsed.ok()) return cli::fail(parsed.error());
            task.hints = parsed.value().locations;
        }
        auto client = make_client(resolve_client);
        if (!client.ok()) return cli::fail(client.error());
        if (registry.empty()) registry = cli::env_or("CODESCOUT_REGISTRY", "");
        auto outcome = run_resolution(workspace, *client.value(), engine, task, registry);
        if (!outcome.ok()) return cli::fail(outcome.error());
        if (!patch_out.empty()) {
            auto w = cli::write_output(patch_out, outcome.value().submission.diff);
            if (!w.ok()) return cli::fail(w.error());
        }
        auto w = cli::write_output(out_path, resolution_to_json(outcome.value()).dump(2));
        return w.ok() ? 0 : cli::fail(w.error());
    }

    if (evaluate_cmd->parsed() || replay_cmd->parsed()) {
        auto specs = load_specs(spec_paths);
        if (!specs.ok()) return cli::fail(specs.error());
        if (jobs > 0) engine.eval.jobs = jobs;
        if (evaluate_cmd->parsed()) {
            auto report = evaluate(engine, specs.value());
            if (!report.ok()) return cli::fail(report.error());
            auto w = cli::write_output(out_path, report_to_json(report.value()).dump(2));
            return w.ok() ? 0 : cli::fail(w.error());
        }
        auto baseline_text = cli::read_file(baseline_path);
        if (!baseline_text.ok()) return cli::fail(baseline_text.error());
        json baseline = json::parse(baseline_text.value(), nullptr, false);
        if (baseline.is_discarded()) {
            return cli::fail(make_error(ErrorCode::Parse, "baseline is not valid JSON"));
        }
        auto result = replay(engine, specs.value(), baseline);
        if (!result.ok()) return cli::fail(result.error());
        json verdict{{"identical", result.value().identical},
                     {"divergence", result.value().divergence}};
        auto w = cli::write_output(out_path, verdict.dump(2));
        if (!w.ok()) return cli::fail(w.error());
        return result.value().identical ? 0 : 1;
    }

    // report
    auto records_text = cli::read_file(records_path);
    if (!records_text.ok()) return cli::fail(records_text.error());
    json doc = json::parse(records_text.value(), nullptr, false);
    if (doc.is_discarded()) {
        return cli::fail(make_error(ErrorCode::Parse, "records file is not valid JSON"));
    }
    auto records = records_from_json(doc);
    if (!records.ok()) return cli::fail(records.error());
    auto report = report_from_records(engine, records.take());
    if (!report.ok()) return cli::fail(report.error());
    auto w = cli::write_output(out_path, report_to_json(report.value()).dump(2));
    return w.ok() ? 0 : cli::fail(w.error());
}
