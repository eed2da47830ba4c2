#include "scout/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace scout {
namespace {

using nlohmann::json;

Result<void> apply_fuzzy(FuzzyConfig& out, const json& j) {
    if (j.contains("weights")) {
        const auto& w = j.at("weights");
        if (!w.is_array() || w.size() != 3) {
            return make_error(ErrorCode::Schema, "fuzzy.weights must be an array of 3 numbers");
        }
        double sum = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            if (!w[i].is_number()) {
                return make_error(ErrorCode::Schema, "fuzzy.weights must be numeric");
            }
            double v = w[i].get<double>();
            if (v < 0.0) return make_error(ErrorCode::Schema, "fuzzy.weights must be non-negative");
            out.weights[i] = v;
            sum += v;
        }
        if (sum <= 0.0) return make_error(ErrorCode::Schema, "fuzzy.weights must sum to > 0");
    }
    if (j.contains("jw_prefix_scale")) out.jw_prefix_scale = j.at("jw_prefix_scale").get<double>();
    if (j.contains("jw_prefix_cap")) out.jw_prefix_cap = j.at("jw_prefix_cap").get<int>();
    return {};
}

Result<void> apply_search(SearchConfig& out, const json& j) {
    if (j.contains("max_hits")) out.max_hits = j.at("max_hits").get<int>();
    if (j.contains("preview_lines_per_hit"))
        out.preview_lines_per_hit = j.at("preview_lines_per_hit").get<int>();
    if (j.contains("response_line_budget"))
        out.response_line_budget = j.at("response_line_budget").get<int>();
    if (j.contains("full_code")) out.full_code = j.at("full_code").get<bool>();
    if (j.contains("fuzzy")) return apply_fuzzy(out.fuzzy, j.at("fuzzy"));
    return {};
}

Result<void> apply_index(IndexConfig& out, const json& j) {
    if (j.contains("chunk_lines")) {
        out.chunk_lines = j.at("chunk_lines").get<int>();
        if (out.chunk_lines < 1) return make_error(ErrorCode::Schema, "index.chunk_lines must be >= 1");
    }
    if (j.contains("max_invoke_candidates"))
        out.max_invoke_candidates = j.at("max_invoke_candidates").get<int>();
    if (j.contains("parse_threads")) out.parse_threads = j.at("parse_threads").get<int>();
    if (j.contains("ignore_dirs")) out.ignore_dirs = j.at("ignore_dirs").get<std::vector<std::string>>();
    if (j.contains("languages"))
        out.languages = j.at("languages").get<std::map<std::string, std::string>>();
    return {};
}

void apply_git(GitConfig& out, const json& j) {
    if (j.contains("author_name")) out.author_name = j.at("author_name").get<std::string>();
    if (j.contains("author_email")) out.author_email = j.at("author_email").get<std::string>();
    if (j.contains("commit_date")) out.commit_date = j.at("commit_date").get<std::string>();
    if (j.contains("stash_prefix")) out.stash_prefix = j.at("stash_prefix").get<std::string>();
}

Result<void> apply_localize(LocalizeConfig& out, const json& j) {
    if (j.contains("max_iterations")) {
        out.max_iterations = j.at("max_iterations").get<int>();
        if (out.max_iterations < 1)
            return make_error(ErrorCode::Schema, "localize.max_iterations must be >= 1");
    }
    if (j.contains("malformed_retry_limit"))
        out.malformed_retry_limit = j.at("malformed_retry_limit").get<int>();
    if (j.contains("ranking_retry_limit"))
        out.ranking_retry_limit = j.at("ranking_retry_limit").get<int>();
    if (j.contains("top_k")) out.top_k = j.at("top_k").get<int>();
    if (j.contains("stage_two_budget"))
        out.stage_two_budget = j.at("stage_two_budget").get<std::size_t>();
    return {};
}

void apply_resolve(ResolveConfig& out, const json& j) {
    if (j.contains("max_turns")) out.max_turns = j.at("max_turns").get<int>();
    if (j.contains("observation_limit"))
        out.observation_limit = j.at("observation_limit").get<std::size_t>();
    if (j.contains("command_timeout_ms"))
        out.command_timeout_ms = j.at("command_timeout_ms").get<int>();
    if (j.contains("repro_prefix")) out.repro_prefix = j.at("repro_prefix").get<std::string>();
}

void apply_paths(PathsConfig& out, const json& j) {
    if (j.contains("prompt_dir")) out.prompt_dir = j.at("prompt_dir").get<std::string>();
    if (j.contains("registry_dir")) out.registry_dir = j.at("registry_dir").get<std::string>();
}

void apply_eval(EvalConfig& out, const json& j) {
    if (j.contains("jobs")) out.jobs = j.at("jobs").get<int>();
    if (j.contains("exclude_empty_function_gold")) {
        out.exclude_empty_function_gold = j.at("exclude_empty_function_gold").get<bool>();
    }
}

}  // namespace

Result<void> apply_config(EngineConfig& cfg, const nlohmann::json& j) {
    if (!j.is_object()) {
        return make_error(ErrorCode::Schema, "config root must be a JSON object");
    }
    try {
        if (j.contains("index")) {
            if (auto r = apply_index(cfg.index, j.at("index")); !r.ok()) return r.error();
        }
        if (j.contains("search")) {
            if (auto r = apply_search(cfg.search, j.at("search")); !r.ok()) return r.error();
        }
        if (j.contains("git")) apply_git(cfg.git, j.at("git"));
        if (j.contains("localize")) {
            if (auto r = apply_localize(cfg.localize, j.at("localize")); !r.ok()) return r.error();
        }
        if (j.contains("resolve")) apply_resolve(cfg.resolve, j.at("resolve"));
        if (j.contains("paths")) apply_paths(cfg.paths, j.at("paths"));
        if (j.contains("eval")) apply_eval(cfg.eval, j.at("eval"));
    } catch (const json::exception& e) {
        return make_error(ErrorCode::Schema, std::string("config: ") + e.what());
    }
    return {};
}

Result<EngineConfig> load_config(const std::string& json_text) {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded()) {
        return make_error(ErrorCode::Parse, "config is not valid JSON");
    }
    EngineConfig cfg;
    if (auto r = apply_config(cfg, j); !r.ok()) return r.error();
    return cfg;
}

Result<EngineConfig> load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return make_error(ErrorCode::Io, "cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config(buf.str());
}

std::string dump_config(const EngineConfig& cfg) {
    json j;
    j["index"] = {{"chunk_lines", cfg.index.chunk_lines},
                  {"max_invoke_candidates", cfg.index.max_invoke_candidates},
                  {"parse_threads", cfg.index.parse_threads},
                  {"ignore_dirs", cfg.index.ignore_dirs},
                  {"languages", cfg.index.languages}};
    j["search"] = {{"max_hits", cfg.search.max_hits},
                   {"preview_lines_per_hit", cfg.search.preview_lines_per_hit},
                   {"response_line_budget", cfg.search.response_line_budget},
                   {"full_code", cfg.search.full_code},
                   {"fuzzy",
                    {{"weights", cfg.search.fuzzy.weights},
                     {"jw_prefix_scale", cfg.search.fuzzy.jw_prefix_scale},
                     {"jw_prefix_cap", cfg.search.fuzzy.jw_prefix_cap}}}};
    j["git"] = {{"author_name", cfg.git.author_name},
                {"author_email", cfg.git.author_email},
                {"commit_date", cfg.git.commit_date},
                {"stash_prefix", cfg.git.stash_prefix}};
    j["localize"] = {{"max_iterations", cfg.localize.max_iterations},
                     {"malformed_retry_limit", cfg.localize.malformed_retry_limit},
                     {"ranking_retry_limit", cfg.localize.ranking_retry_limit},
                     {"top_k", cfg.localize.top_k},
                     {"stage_two_budget", cfg.localize.stage_two_budget}};
    j["resolve"] = {{"max_turns", cfg.resolve.max_turns},
                    {"observation_limit", cfg.resolve.observation_limit},
                    {"command_timeout_ms", cfg.resolve.command_timeout_ms},
                    {"repro_prefix", cfg.resolve.repro_prefix}};
    j["paths"] = {{"prompt_dir", cfg.paths.prompt_dir},
                  {"registry_dir", cfg.paths.registry_dir}};
    j["eval"] = {{"jobs", cfg.eval.jobs},
                 {"exclude_empty_function_gold", cfg.eval.exclude_empty_function_gold}};
    return j.dump(2) + "\n";
}

}  // namespace scout
