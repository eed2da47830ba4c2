// Localization loop behavior driven by scripted transcripts over fixture F1.
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "scout/client.hpp"
#include "scout/code_index.hpp"
#include "scout/localization.hpp"

using namespace scout;
using nlohmann::json;

namespace {

const CodeIndex& f1_index() {
    static CodeIndex idx = [] {
        IndexConfig ic;
        ic.ignore_dirs.push_back("tests");
        auto r = index_repository(std::string(SCOUT_SOURCE_DIR) + "/tests/fixtures/f1", ic);
        if (!r.ok()) throw std::runtime_error("f1 index failed: " + r.error().message);
        return r.take();
    }();
    return idx;
}

EngineConfig test_config() {
    EngineConfig cfg;
    cfg.paths.prompt_dir = std::string(SCOUT_SOURCE_DIR) + "/assets/prompts";
    return cfg;
}

json turn_tool(const std::string& name, json args, std::vector<std::string> expect = {}) {
    json t = {{"text", "ok"},
              {"tool_calls", json::array({json{{"name", name}, {"args", std::move(args)}}})}};
    if (!expect.empty()) t["expect_contains"] = expect;
    return t;
}

json turn_text(const std::string& text, std::vector<std::string> expect = {}) {
    json t = {{"text", text}};
    if (!expect.empty()) t["expect_contains"] = expect;
    return t;
}

std::string transcript(std::vector<json> turns) {
    return json{{"turns", std::move(turns)}}.dump();
}

const std::string kIssue =
    "Dotted keys like 'a.b.c' are not resolved; nested values land under one flat key "
    "containing dots.";

Result<LocalizationOutcome> run_with(const std::string& transcript_json, const EngineConfig& cfg,
                                     const std::string& issue = kIssue) {
    auto turns = parse_transcript(transcript_json);
    if (!turns.ok()) throw std::runtime_error("bad transcript: " + turns.error().message);
    ScriptedClient client(turns.take());
    LocalizationTask task{"f1-demo", "demo-config", issue};
    return run_localization(f1_index(), client, cfg, task);
}

}  // namespace

TEST_CASE("localization: empty issue is rejected before any model call") {
    ScriptedClient client({});
    LocalizationTask task{"x", "repo", "   \n  "};
    auto r = run_localization(f1_index(), client, test_config(), task);
    REQUIRE(!r.ok());
    CHECK(r.error().code == ErrorCode::InvalidTask);
    CHECK(client.calls() == 0);
}

TEST_CASE("localization: happy path with descent, finish, and two-stage ranking") {
    auto text = transcript({
        turn_tool("find_code_def", {{"definition_name", "parse_config"}}, {"Dotted keys"}),
        turn_tool("find_child_unit", {{"definition_name", "resolve_path"}, {"file_path", "config.py"}},
                  {"config.py:parse_config"}),
        turn_tool("find_child_unit", {{"definition_name", "Config.get"}, {"file_path", "models.py"}},
                  {"config.py:resolve_path"}),
        turn_tool("finish_search", json::object()),
        turn_text("1. config.py::resolve_path — splits dotted keys\n"
                  "2. models.py::Config.get — walks nested nodes\n"
                  "3. config.py::parse_config — builds the tree",
                  {"numbered list"}),
        turn_text("1. config.py::resolve_path — must split on '.'\n"
                  "2. models.py::Config.get — relies on the same split",
                  {"### config.py::resolve_path"}),
    });
    auto r = run_with(text, test_config());
    REQUIRE_MESSAGE(r.ok(), (r.ok() ? std::string() : r.error().message));
    const LocalizationOutcome& o = r.value();
    CHECK(!o.aborted);
    CHECK(o.finish_called);
    CHECK(o.iterations_used == 3);
    CHECK(o.max_depth == 2);
    REQUIRE(o.locations.size() == 2);
    CHECK(o.locations[0].unit_id == "config.py:resolve_path");
    CHECK(o.locations[0].path == "config.py");
    CHECK(o.locations[0].name == "resolve_path");
    CHECK(o.locations[0].rationale == "must split on '.'");
    CHECK(o.locations[1].unit_id == "models.py:Config.get");

    CHECK(o.trajectory.at("steps").size() == 4);  // 3 tools + finish
    CHECK(o.trajectory.at("stage1").at("entries").size() == 3);
    CHECK(o.trajectory.at("stage2").at("used") == true);
    CHECK(o.trajectory.at("stage2").at("fell_back") == false);
    CHECK(o.trajectory.at("warnings").empty());

    // Round trip through the output document.
    json doc = localization_to_json(o);
    CHECK(doc.size() == 3);
    CHECK(doc.at("locations")[0].at("rank") == 1);
    auto back = localization_from_json(doc);
    REQUIRE(back.ok());
    CHECK(back.value().instance_id == o.instance_id);
    CHECK(back.value().locations == o.locations);
    CHECK(back.value().iterations_used == 3);
    CHECK(back.value().finish_called);
}

TEST_CASE("localization: malformed calls get one free retry, then count") {
    auto text = transcript({
        turn_text("I think I'll just describe my plan."),  // no tool call
        turn_tool("grep_stuff", {{"pattern", "x"}}, {"Tool call problem"}),
        turn_tool("find_code_def", json::object(), {"unknown tool 'grep_stuff'"}),
        turn_tool("finish_search", json::object(), {"missing string argument"}),
        turn_text("1. util.py::normalize"),
        turn_text("1. util.py::normalize"),
    });
    auto r = run_with(text, test_config());
    REQUIRE_MESSAGE(r.ok(), (r.ok() ? std::string() : r.error().message));
    const LocalizationOutcome& o = r.value();
    CHECK(o.iterations_used == 2);  // two counted malformed calls, zero executed tools
    CHECK(o.finish_called);
    int retries = 0, counted = 0;
    for (const json& s : o.trajectory.at("steps")) {
        if (s.at("type") == "malformed_retry") ++retries;
        if (s.at("type") == "malformed") ++counted;
    }
    CHECK(retries == 1);
    CHECK(counted == 2);
    REQUIRE(o.locations.size() == 1);
    CHECK(o.locations[0].unit_id == "util.py:normalize");
}

TEST_CASE("localization: budget exhaustion forces ranking without finish") {
    EngineConfig cfg = test_config();
    cfg.localize.max_iterations = 3;
    auto text = transcript({
        turn_tool("find_code_def", {{"definition_name", "normalize"}}),
        turn_tool("find_code_def", {{"definition_name", "parse_config"}}),
        turn_tool("find_code_def", {{"definition_name", "read_file"}}),
        turn_text("1. util.py::normalize", {"Stop exploring"}),
        turn_text("1. util.py::normalize"),
    });
    auto r = run_with(text, cfg);
    REQUIRE_MESSAGE(r.ok(), (r.ok() ? std::string() : r.error().message));
    CHECK(r.value().iterations_used == 3);
    CHECK(!r.value().finish_called);
    CHECK(!r.value().aborted);
    REQUIRE(r.value().locations.size() == 1);
}

TEST_CASE("localization: depth streak counts uninterrupted descents") {
    auto text = transcript({
        turn_tool("find_code_def", {{"definition_name", "Config"}}),
        turn_tool("find_child_unit", {{"definition_name", "Config.get"}, {"file_path", "models.py"}}),
        turn_tool("find_child_unit", {{"definition_name", "resolve_path"}, {"file_path", "config.py"}}),
        turn_tool("find_child_unit", {{"definition_name", "no_such_thing"}, {"file_path", "config.py"}}),
        turn_tool("find_child_unit", {{"definition_name", "read_file"}, {"file_path", "config.py"}},
                  {"no definition 'no_such_thing'"}),
        turn_tool("finish_search", json::object()),
        turn_text("1. config.py::resolve_path"),
        turn_text("1. config.py::resolve_path"),
    });
    auto r = run_with(text, test_config());
    REQUIRE_MESSAGE(r.ok(), (r.ok() ? std::string() : r.error().message));
    CHECK(r.value().iterations_used == 5);
    CHECK(r.value().max_depth == 2);  // the failed descent reset the streak
}

TEST_CASE("localization: stage-2 entries outside the shortlist are dropped") {
    auto text = transcript({
        turn_tool("find_code_def", {{"definition_name", "resolve_path"}}),
        turn_tool("finish_search", json::object()),
        turn_text("1. config.py::resolve_path\n2. util.py::normalize"),
        turn_text("1. config.py::parse_config — not shortlisted\n2. util.py::normalize — fine"),
    });
    auto r = run_with(text, test_config());
    REQUIRE_MESSAGE(r.ok(), (r.ok() ? std::string() : r.error().message));
    const LocalizationOutcome& o = r.value();
    REQUIRE(o.locations.size() == 1);
    CHECK(o.locations[0].unit_id == "util.py:normalize");
    CHECK(o.trajectory.at("stage2").at("dropped").size() == 1);
    bool warned = false;
    for (const json& w : o.trajectory.at("warnings")) {
        if (w.get<std::string>().find("not in the shortlist") != std::string::npos) warned = true;
    }
    CHECK(warned);
}

TEST_CASE("localization: stage-2 double failure falls back to the shortlist") {
    auto text = transcript({
        turn_tool("finish_search", json::object()),
        turn_text("1. config.py::resolve_path\n2. util.py::normalize"),
        turn_text("no idea"),
        turn_text("still nothing", {"chosen from your shortlist"}),
    });
    auto r = run_with(text, test_config());
    REQUIRE_MESSAGE(r.ok(), (r.ok() ? std::string() : r.error().message));
    const LocalizationOutcome& o = r.value();
    CHECK(!o.aborted);
    CHECK(o.trajectory.at("stage2").at("fell_back") == true);
    CHECK(o.trajectory.at("stage2").at("retries") == 1);
    REQUIRE(o.locations.size() == 2);
    CHECK(o.locations[0].unit_id == "config.py:resolve_path");
    CHECK(o.locations[1].unit_id == "util.py:normalize");
}

TEST_CASE("localization: unusable stage-1 ranking soft-aborts") {
    auto text = transcript({
        turn_tool("finish_search", json::object()),
        turn_text("nothing to see"),
        turn_text("still nothing", {"could not parse"}),
    });
    auto r = run_with(text, test_config());
    REQUIRE_MESSAGE(r.ok(), (r.ok() ? std::string() : r.error().message));
    CHECK(r.value().aborted);
    CHECK(r.value().abort_reason.find("unparseable") != std::string::npos);
    CHECK(r.value().locations.empty());
}

TEST_CASE("localization: transcript exhaustion soft-aborts with a partial trajectory") {
    auto r = run_with(transcript({}), test_config());
    REQUIRE_MESSAGE(r.ok(), (r.ok() ? std::string() : r.error().message));
    CHECK(r.value().aborted);
    CHECK(r.value().abort_reason.find("exhausted") != std::string::npos);
    CHECK(r.value().iterations_used == 0);
    CHECK(r.value().locations.empty());
    CHECK(r.value().trajectory.at("aborted") == true);
}

TEST_CASE("localization: transcript drift is a hard error") {
    auto text = transcript({
        turn_tool("finish_search", json::object(), {"THIS STRING WILL NOT APPEAR ANYWHERE"}),
    });
    auto r = run_with(text, test_config());
    REQUIRE(!r.ok());
    CHECK(r.error().code == ErrorCode::State);
}

TEST_CASE("ranking parser: formats, decoration, duplicates, unknowns") {
    std::vector<std::string> warnings;
    std::string text =
        "Here is my ranking:\n"
        "1. config.py::resolve_path — splits keys\n"
        "2) models.py::Config.get - getter\n"
        "- `util.py::normalize`: cleans values\n"
        "3. **config.py::parse_config** — bold entry\n"
        "4. config.py::resolve_path (duplicate)\n"
        "5. nosuch.py::thing\n"
        "6. config.py::missing_fn\n"
        "plain prose line without separator\n";
    auto entries = parse_ranking(f1_index(), text, warnings);
    REQUIRE(entries.size() == 4);
    CHECK(entries[0].unit_id == "config.py:resolve_path");
    CHECK(entries[0].rationale == "splits keys");
    CHECK(entries[1].unit_id == "models.py:Config.get");
    CHECK(entries[1].rationale == "getter");
    CHECK(entries[2].unit_id == "util.py:normalize");
    CHECK(entries[2].rationale == "cleans values");
    CHECK(entries[3].unit_id == "config.py:parse_config");
    REQUIRE(warnings.size() == 3);
    CHECK(warnings[0].find("duplicate") != std::string::npos);
    CHECK(warnings[1].find("not in the index") != std::string::npos);
    CHECK(warnings[2].find("no definition 'missing_fn'") != std::string::npos);
}

TEST_CASE("localization: stage-2 sources respect the byte budget") {
    EngineConfig cfg = test_config();
    cfg.localize.stage_two_budget = 180;
    auto text = transcript({
        turn_tool("finish_search", json::object()),
        turn_text("1. config.py::resolve_path\n2. config.py::parse_config"),
        turn_text("1. config.py::resolve_path", {"resolve_path"}),
    });
    auto r = run_with(text, cfg);
    REQUIRE_MESSAGE(r.ok(), (r.ok() ? std::string() : r.error().message));
    const json& s2 = r.value().trajectory.at("stage2");
    CHECK(s2.at("source_truncated") == true);
    CHECK(s2.at("source_bytes").get<std::size_t>() <= 180);
    CHECK(!s2.at("omitted_sources").empty());
}
