#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "scout/code_index.hpp"
#include "scout/text.hpp"

using namespace scout;
namespace fs = std::filesystem;

namespace {

struct TempRepo {
    fs::path root;
    TempRepo() {
        root = fs::temp_directory_path() /
               ("scout_idx_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(root);
    }
    ~TempRepo() {
        std::error_code ec;
        fs::remove_all(root, ec);
    }
    void write(const std::string& rel, const std::string& content) {
        fs::path p = root / rel;
        fs::create_directories(p.parent_path());
        std::ofstream out(p, std::ios::binary);
        out << content;
    }
};

bool has_child(const CodeUnit& u, const std::string& id, EdgeKind kind) {
    for (const ChildEdge& c : u.children) {
        if (c.id == id && c.kind == kind) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("index covers every line and is deterministic") {
    TempRepo repo;
    repo.write("app.py",
               "import sys\n"
               "\n"
               "def main():\n"
               "    helper()\n"
               "\n"
               "def helper():\n"
               "    return 1\n"
               "\n"
               "CONST = 2\n");
    repo.write("pkg/util.py",
               "class Box:\n"
               "    def get(self):\n"
               "        return self.v\n");
    IndexConfig cfg;
    auto r1 = index_repository(repo.root.string(), cfg);
    REQUIRE(r1.ok());
    const CodeIndex& idx = r1.value();

    for (const std::string& path : idx.files()) {
        int n = idx.file_line_count(path);
        std::vector<bool> covered(static_cast<std::size_t>(n) + 1, false);
        for (const std::string& id : idx.by_file.at(path)) {
            const CodeUnit& u = idx.units.at(id);
            CHECK(count_lines(u.text) == static_cast<std::size_t>(u.end_line - u.start_line + 1));
            for (int ln = u.start_line; ln <= u.end_line; ++ln) {
                covered[static_cast<std::size_t>(ln)] = true;
            }
        }
        for (int ln = 1; ln <= n; ++ln) CHECK(covered[static_cast<std::size_t>(ln)]);
    }

    auto r2 = index_repository(repo.root.string(), cfg);
    REQUIRE(r2.ok());
    CHECK(serialize_index(r1.value()) == serialize_index(r2.value()));

    // same-file invoke resolved
    const CodeUnit* main_unit = idx.find("app.py:main");
    REQUIRE(main_unit);
    CHECK(has_child(*main_unit, "app.py:helper", EdgeKind::Invokes));
    // reconstruction of raw file text
    CHECK(idx.file_text("app.py").find("CONST = 2") != std::string::npos);
}

TEST_CASE("chunks split at the configured length") {
    TempRepo repo;
    std::string big;
    for (int i = 1; i <= 450; ++i) big += "x = " + std::to_string(i) + "\n";
    repo.write("data.py", big);
    IndexConfig cfg;
    auto r = index_repository(repo.root.string(), cfg);
    REQUIRE(r.ok());
    const auto& ids = r.value().by_file.at("data.py");
    REQUIRE(ids.size() == 3);
    const CodeUnit& c1 = r.value().units.at("data.py:chunk_1");
    const CodeUnit& c2 = r.value().units.at("data.py:chunk_2");
    const CodeUnit& c3 = r.value().units.at("data.py:chunk_3");
    CHECK(c1.start_line == 1);
    CHECK(c1.end_line == 200);
    CHECK(c2.start_line == 201);
    CHECK(c2.end_line == 400);
    CHECK(c3.start_line == 401);
    CHECK(c3.end_line == 450);
    CHECK(c1.name.empty());
    CHECK(c1.kind == UnitKind::Chunk);
}

TEST_CASE("duplicate names get suffixed ids in source order") {
    TempRepo repo;
    repo.write("dup.py",
               "def compute(x):\n"
               "    return x\n"
               "\n"
               "def compute(x):\n"
               "    return x + 1\n");
    auto r = index_repository(repo.root.string(), IndexConfig{});
    REQUIRE(r.ok());
    const CodeUnit* first = r.value().find("dup.py:compute");
    const CodeUnit* second = r.value().find("dup.py:compute#2");
    REQUIRE(first);
    REQUIRE(second);
    CHECK(first->start_line == 1);
    CHECK(second->start_line == 4);
    CHECK(first->name == "compute");
    CHECK(second->name == "compute");
}

TEST_CASE("invokes prefer same file, ambiguous capped, self excluded") {
    TempRepo repo;
    repo.write("a.py",
               "def work():\n"
               "    return work()\n"  // self-recursion: no self edge
               "\n"
               "def entry():\n"
               "    shared()\n");
    repo.write("b.py", "def shared():\n    return 1\n");
    repo.write("c.py",
               "def shared():\n"
               "    return 2\n"
               "\n"
               "def caller():\n"
               "    shared()\n");
    auto r = index_repository(repo.root.string(), IndexConfig{});
    REQUIRE(r.ok());
    const CodeIndex& idx = r.value();

    const CodeUnit* work = idx.find("a.py:work");
    REQUIRE(work);
    CHECK(work->children.empty());

    // same-file preference: caller in c.py binds to c.py:shared only
    const CodeUnit* caller = idx.find("c.py:caller");
    REQUIRE(caller);
    REQUIRE(caller->children.size() == 1);
    CHECK(caller->children[0].id == "c.py:shared");

    // cross-file ambiguity: entry in a.py sees both shared defs
    const CodeUnit* entry = idx.find("a.py:entry");
    REQUIRE(entry);
    REQUIRE(entry->children.size() == 2);
    CHECK(has_child(*entry, "b.py:shared", EdgeKind::Invokes));
    CHECK(has_child(*entry, "c.py:shared", EdgeKind::Invokes));
}

TEST_CASE("contains edges and nested adjacency") {
    TempRepo repo;
    repo.write("models.py",
               "class A:\n"
               "    def m(self):\n"
               "        return util()\n"
               "\n"
               "def util():\n"
               "    return 0\n");
    auto r = index_repository(repo.root.string(), IndexConfig{});
    REQUIRE(r.ok());
    const CodeUnit* a = r.value().find("models.py:A");
    REQUIRE(a);
    CHECK(has_child(*a, "models.py:A.m", EdgeKind::Contains));
    const CodeUnit* m = r.value().find("models.py:A.m");
    REQUIRE(m);
    CHECK(has_child(*m, "models.py:util", EdgeKind::Invokes));
    // the class does not inherit the method body's calls
    CHECK_FALSE(has_child(*a, "models.py:util", EdgeKind::Invokes));
}

TEST_CASE("parse failures degrade to chunks with a diagnostic") {
    TempRepo repo;
    repo.write("broken.py", "def f():\n    pass\nx = '''open ended\n");
    repo.write("fine.py", "def g():\n    return 1\n");
    auto r = index_repository(repo.root.string(), IndexConfig{});
    REQUIRE(r.ok());
    REQUIRE(r.value().diagnostics.size() == 1);
    CHECK(r.value().diagnostics[0].path == "broken.py");
    // broken file is chunked, not definition-indexed
    CHECK(r.value().find("broken.py:f") == nullptr);
    REQUIRE(r.value().by_file.count("broken.py"));
    CHECK(r.value().units.at("broken.py:chunk_1").end_line == 3);
    CHECK(r.value().find("fine.py:g") != nullptr);
}

TEST_CASE("serialize/deserialize round trip") {
    TempRepo repo;
    repo.write("x.py", "def f():\n    return 1\n\nclass K:\n    def m(self):\n        f()\n");
    auto r = index_repository(repo.root.string(), IndexConfig{});
    REQUIRE(r.ok());
    std::string blob = serialize_index(r.value());
    auto back = deserialize_index(blob);
    REQUIRE(back.ok());
    CHECK(serialize_index(back.value()) == blob);
    CHECK(back.value().units.size() == r.value().units.size());
    CHECK(back.value().by_file.at("x.py") == r.value().by_file.at("x.py"));
}

TEST_CASE("skeleton and unit lookup errors") {
    TempRepo repo;
    repo.write("m.py", "class A:\n    def m(self):\n        pass\n");
    auto r = index_repository(repo.root.string(), IndexConfig{});
    REQUIRE(r.ok());
    auto sk = file_skeleton(r.value(), "m.py");
    REQUIRE(sk.ok());
    REQUIRE(sk.value().entries.size() == 2);
    CHECK(sk.value().entries[0].name == "A");
    CHECK(sk.value().entries[1].name == "A.m");
    CHECK_FALSE(file_skeleton(r.value(), "ghost.py").ok());
    CHECK_FALSE(get_unit(r.value(), "m.py:zzz").ok());
    CHECK(get_unit(r.value(), "m.py:A.m").ok());
}

TEST_CASE("empty directory indexes to zero units") {
    TempRepo repo;
    auto r = index_repository(repo.root.string(), IndexConfig{});
    REQUIRE(r.ok());
    CHECK(r.value().units.empty());
    CHECK(r.value().diagnostics.empty());
}

TEST_CASE("extract_definitions rejects unknown grammars") {
    auto r = extract_definitions("x.lisp", "(defun f ())", "lisp");
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().code == ErrorCode::UnsupportedLanguage);
}
