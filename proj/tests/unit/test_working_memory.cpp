#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "scout/working_memory.hpp"

using namespace scout;
namespace fs = std::filesystem;

namespace {

std::string hex40(std::mt19937& rng) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (int i = 0; i < 40; ++i) s += digits[rng() % 16];
    return s;
}

WorkingMemoryState random_state(std::mt19937& rng) {
    WorkingMemoryState state;
    if (rng() % 2) {
        state.original_state_hash = hex40(rng);
        state.base_hash = hex40(rng);
    }
    int hyp_count = static_cast<int>(rng() % 4);
    for (int i = 0; i < hyp_count; ++i) {
        HypothesisRecord h;
        h.name = "H" + std::to_string(i + 1);
        h.content = "candidate strategy " + std::to_string(rng() % 1000);
        h.status = static_cast<ItemStatus>(rng() % 4);
        h.confidence = 0.1 + 0.1 * static_cast<double>(rng() % 10);
        if (h.confidence > 1.0) h.confidence = 1.0;
        if (h.status != ItemStatus::Pending && rng() % 2) {
            h.branch = "branch-" + std::to_string(i + 1);
            h.origin_hash = hex40(rng);
        }
        int todo_count = static_cast<int>(rng() % 4);
        for (int t = 0; t < todo_count; ++t) {
            TodoRecord todo;
            todo.content = "step " + std::to_string(t + 1) + " of " + h.name;
            todo.action = rng() % 2 ? ActionKind::Edit : ActionKind::Test;
            todo.status = static_cast<ItemStatus>(rng() % 4);
            if ((todo.status == ItemStatus::Successful || todo.status == ItemStatus::Failed) &&
                rng() % 2) {
                todo.checkpoint = Checkpoint{hex40(rng), "commit " + std::to_string(rng() % 50)};
            }
            h.todos.push_back(std::move(todo));
        }
        state.hypotheses.push_back(std::move(h));
    }
    int insight_count = static_cast<int>(rng() % 3);
    for (int i = 0; i < insight_count; ++i) {
        Insight in;
        in.hypothesis = state.hypotheses.empty() || rng() % 2 == 0
                            ? ""
                            : state.hypotheses[rng() % state.hypotheses.size()].name;
        in.text = "observation " + std::to_string(rng() % 1000);
        in.timestamp = state.tick();
        state.insights.push_back(std::move(in));
    }
    if (rng() % 3 == 0) state.extra["future_field"] = static_cast<int>(rng() % 7);
    return state;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("scout-mem-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

}  // namespace

TEST_CASE("memory save/load round trip preserves all fields") {
    TempDir dir;
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        WorkingMemoryState state = random_state(rng);
        std::string path = (dir.path / ("m" + std::to_string(trial) + ".json")).string();
        REQUIRE(save_memory(state, path).ok());
        auto loaded = load_memory(path);
        REQUIRE(loaded.ok());
        CHECK(loaded.value() == state);
    }
}

TEST_CASE("canonical re-save is byte stable") {
    TempDir dir;
    std::mt19937 rng(11);
    WorkingMemoryState state = random_state(rng);
    std::string a = (dir.path / "a.json").string();
    std::string b = (dir.path / "b.json").string();
    REQUIRE(save_memory(state, a).ok());
    auto loaded = load_memory(a);
    REQUIRE(loaded.ok());
    REQUIRE(save_memory(loaded.value(), b).ok());
    std::ifstream fa(a), fb(b);
    std::string ta((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    std::string tb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    CHECK(ta == tb);
}

TEST_CASE("unknown future fields survive the round trip") {
    TempDir dir;
    std::string path = (dir.path / "m.json").string();
    WorkingMemoryState state;
    state.extra["experimental"] = {{"nested", true}};
    REQUIRE(save_memory(state, path).ok());
    auto loaded = load_memory(path);
    REQUIRE(loaded.ok());
    CHECK(loaded.value().extra.at("experimental").at("nested") == true);
}

TEST_CASE("corrupt and truncated files are schema errors") {
    TempDir dir;
    std::string path = (dir.path / "bad.json").string();
    {
        std::ofstream out(path);
        out << "{\"schema_version\": 1, \"hypotheses\": [";
    }
    auto loaded = load_memory(path);
    REQUIRE(!loaded.ok());
    CHECK(loaded.error().code == ErrorCode::Schema);

    {
        std::ofstream out(path);
        out << "{\"schema_version\": 99}";
    }
    auto wrong_version = load_memory(path);
    REQUIRE(!wrong_version.ok());
    CHECK(wrong_version.error().code == ErrorCode::Schema);
    CHECK(wrong_version.error().message.find("99") != std::string::npos);

    auto missing = load_memory((dir.path / "absent.json").string());
    REQUIRE(!missing.ok());
    CHECK(missing.error().code == ErrorCode::NotFound);
}

TEST_CASE("invalid hashes and checkpoint status are rejected on load") {
    TempDir dir;
    std::string path = (dir.path / "m.json").string();
    {
        std::ofstream out(path);
        out << R"({"schema_version":1,"original_state_hash":"XYZ","base_hash":"XYZ"})";
    }
    auto bad_hash = load_memory(path);
    REQUIRE(!bad_hash.ok());
    CHECK(bad_hash.error().code == ErrorCode::Schema);

    {
        std::ofstream out(path);
        out << R"({"schema_version":1,"hypotheses":[{"name":"H1","status":"in_progress",
                   "confidence":0.5,"todos":[{"content":"t","action":"edit","status":"pending",
                   "checkpoint":{"hash":")"
            << std::string(40, 'a') << R"(","message":"m"}}]}]})";
    }
    auto bad_status = load_memory(path);
    REQUIRE(!bad_status.ok());
    CHECK(bad_status.error().message.find("successful or failed") != std::string::npos);
}

TEST_CASE("record and lookup checkpoints with exact and prefix matching") {
    WorkingMemoryState state;
    HypothesisRecord h;
    h.name = "H1";
    h.status = ItemStatus::InProgress;
    h.todos.push_back({"Fix parser null handling", ActionKind::Edit, ItemStatus::Pending, {}});
    h.todos.push_back({"Fix parser error messages", ActionKind::Edit, ItemStatus::Pending, {}});
    h.todos.push_back({"Run the suite", ActionKind::Test, ItemStatus::Pending, {}});
    state.hypotheses.push_back(h);

    std::string hash_a(40, 'a'), hash_b(40, 'b');
    REQUIRE(record_checkpoint(state, "H1", "Fix parser null handling", hash_a, "first").ok());
    CHECK(state.hypotheses[0].todos[0].status == ItemStatus::Successful);

    auto dup = record_checkpoint(state, "H1", "Fix parser null handling", hash_b, "again");
    REQUIRE(!dup.ok());
    CHECK(dup.error().code == ErrorCode::Conflict);

    auto unknown_hyp = record_checkpoint(state, "H9", "Run the suite", hash_b, "x");
    REQUIRE(!unknown_hyp.ok());
    CHECK(unknown_hyp.error().code == ErrorCode::NotFound);

    auto exact = lookup_checkpoint(state, "H1", "Fix parser null handling");
    REQUIRE(exact.ok());
    CHECK(exact.value().hash == hash_a);
    CHECK(exact.value().message == "first");

    auto ambiguous = lookup_checkpoint(state, "H1", "Fix parser");
    REQUIRE(!ambiguous.ok());
    CHECK(ambiguous.error().code == ErrorCode::Ambiguous);

    auto prefix = lookup_checkpoint(state, "H1", "Fix parser null");
    REQUIRE(prefix.ok());
    CHECK(prefix.value().hash == hash_a);

    auto no_checkpoint = lookup_checkpoint(state, "H1", "Run the suite");
    REQUIRE(!no_checkpoint.ok());
    CHECK(no_checkpoint.error().code == ErrorCode::NotFound);
    CHECK(no_checkpoint.error().message.find("Fix parser null handling") != std::string::npos);
}

TEST_CASE("registry path sanitizes instance ids") {
    CHECK(registry_memory_path("/tmp/reg", "fixture-1") == "/tmp/reg/fixture-1.json");
    CHECK(registry_memory_path("/tmp/reg", "a/b c") == "/tmp/reg/a_b_c.json");
    CHECK(registry_memory_path("/tmp/reg", "") == "/tmp/reg/default.json");
}
