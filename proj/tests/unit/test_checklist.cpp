#include <random>

#include "doctest.h"
#include "scout/checklist.hpp"

using namespace scout;

TEST_CASE("checklist parses tags, dashes, and blank lines") {
    auto doc = parse_checklist("- [ ] first\n\n- [-] second\n- [v] third\n- [!] fourth\n");
    REQUIRE(doc.ok());
    auto& items = doc.value().items;
    REQUIRE(items.size() == 4);
    CHECK(items[0].status == ItemStatus::Pending);
    CHECK(items[1].status == ItemStatus::InProgress);
    CHECK(items[2].status == ItemStatus::Successful);
    CHECK(items[3].status == ItemStatus::Failed);
    CHECK(items[0].text == "first");
}

TEST_CASE("checklist accepts items without the leading dash") {
    auto doc = parse_checklist("[ ] bare item\n");
    REQUIRE(doc.ok());
    CHECK(doc.value().items.size() == 1);
}

TEST_CASE("malformed tag is a parse error echoing the line") {
    auto doc = parse_checklist("- [x] wrong tag\n");
    REQUIRE(!doc.ok());
    CHECK(doc.error().code == ErrorCode::Parse);
    CHECK(doc.error().message.find("[x]") != std::string::npos);
    CHECK(doc.error().message.find("wrong tag") != std::string::npos);

    auto prose = parse_checklist("just some prose\n");
    REQUIRE(!prose.ok());
    CHECK(prose.error().code == ErrorCode::Parse);
}

TEST_CASE("parse-render round trip is the identity on generated documents") {
    std::mt19937 rng(20260816);
    const char* words[] = {"fix", "parser", "retry", "cache", "probe", "guard"};
    for (int trial = 0; trial < 200; ++trial) {
        ChecklistDocument doc;
        int n = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < n; ++i) {
            ChecklistItem item;
            item.status = static_cast<ItemStatus>(rng() % 4);
            item.text = std::string(words[rng() % 6]) + " " + words[rng() % 6] + " #" +
                        std::to_string(rng() % 100);
            doc.items.push_back(item);
        }
        auto back = parse_checklist(render_checklist(doc));
        REQUIRE(back.ok());
        CHECK(back.value() == doc);
    }
}

TEST_CASE("confidence annotation parses and validates range") {
    auto ok = split_confidence("H1: null-check in parser (confidence: 0.8)");
    REQUIRE(ok.ok());
    CHECK(ok.value().text == "H1: null-check in parser");
    CHECK(ok.value().confidence == doctest::Approx(0.8));

    auto high = split_confidence("H1: over (confidence: 1.5)");
    REQUIRE(!high.ok());
    CHECK(high.error().message.find("0.1-1.0") != std::string::npos);

    auto missing = split_confidence("H1: no annotation");
    REQUIRE(!missing.ok());
    CHECK(missing.error().code == ErrorCode::Parse);
}

TEST_CASE("action suffix parses and is required") {
    auto edit = split_action("Fix the key separator in resolve_path (edit)");
    REQUIRE(edit.ok());
    CHECK(edit.value().action == ActionKind::Edit);
    CHECK(edit.value().text == "Fix the key separator in resolve_path");

    auto test = split_action("Run the reproduction script (test)");
    REQUIRE(test.ok());
    CHECK(test.value().action == ActionKind::Test);

    auto none = split_action("Do something vague");
    REQUIRE(!none.ok());
    CHECK(none.error().message.find("(edit)") != std::string::npos);
}

TEST_CASE("name split handles colon and plain forms") {
    NameSplit named = split_name("H2: keys use dot separators");
    CHECK(named.name == "H2");
    CHECK(named.content == "keys use dot separators");

    NameSplit plain = split_name("standalone");
    CHECK(plain.name == "standalone");
    CHECK(plain.content == "standalone");
}
