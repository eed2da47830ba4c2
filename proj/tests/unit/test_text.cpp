#include "doctest.h"
#include "scout/text.hpp"

using namespace scout;

TEST_CASE("split_lines ignores the trailing newline") {
    CHECK(split_lines("a\nb\n") == std::vector<std::string>{"a", "b"});
    CHECK(split_lines("a\nb") == std::vector<std::string>{"a", "b"});
    CHECK(split_lines("") == std::vector<std::string>{});
    CHECK(split_lines("\n") == std::vector<std::string>{""});
}

TEST_CASE("count_lines matches split_lines") {
    for (const char* s : {"", "x", "x\n", "a\nb", "a\nb\n", "\n\n\n"}) {
        CHECK(count_lines(s) == split_lines(s).size());
    }
}

TEST_CASE("slice_lines is an exact byte slice") {
    std::string text = "one\ntwo\nthree\nfour";
    CHECK(slice_lines(text, 1, 1) == "one\n");
    CHECK(slice_lines(text, 2, 3) == "two\nthree\n");
    CHECK(slice_lines(text, 4, 4) == "four");
    CHECK(slice_lines(text, 1, 4) == text);
    CHECK(slice_lines(text, 5, 6) == "");
    // span-length invariant used by the index
    CHECK(count_lines(slice_lines(text, 2, 4)) == 3);
}

TEST_CASE("identifier_words normalizes naming conventions") {
    std::vector<std::string> expect{"max", "retry", "count"};
    CHECK(identifier_words("maxRetryCount") == expect);
    CHECK(identifier_words("MaxRetryCount") == expect);
    CHECK(identifier_words("max_retry_count") == expect);
    CHECK(identifier_words("MAX_RETRY_COUNT") == expect);
    CHECK(identifier_words("HTTPServer") == std::vector<std::string>{"http", "server"});
    CHECK(identifier_words("x") == std::vector<std::string>{"x"});
}

TEST_CASE("last_component strips the dotted prefix") {
    CHECK(last_component("Config.get") == "get");
    CHECK(last_component("get") == "get");
    CHECK(last_component("a.b.c") == "c");
}

TEST_CASE("glob_to_regex follows fnmatch semantics") {
    auto re = glob_to_regex("*.py");
    REQUIRE(re.ok());
    CHECK(re.value() == ".*\\.py");
    CHECK(glob_to_regex("a?c").value() == "a.c");
    CHECK(glob_to_regex("[abc]x").value() == "[abc]x");
    CHECK(glob_to_regex("[!abc]").value() == "[^abc]");
    auto bad = glob_to_regex("foo[bar");
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.error().code == ErrorCode::InvalidQuery);
}

TEST_CASE("truncate_tail_biased keeps the tail") {
    std::string text(20, 'a');
    text += "TAIL";
    std::string t = truncate_tail_biased(text, 10);
    CHECK(t.find("TAIL") != std::string::npos);
    CHECK(t.find("[truncated 14 characters]") == 0);
    CHECK(truncate_tail_biased("short", 10) == "short");
}

TEST_CASE("trim and helpers") {
    CHECK(trim("  x  ") == "x");
    CHECK(trim("\t\n") == "");
    CHECK(starts_with("abcdef", "abc"));
    CHECK_FALSE(starts_with("ab", "abc"));
    CHECK(to_lower("AbC") == "abc");
    CHECK(is_identifier("_x9"));
    CHECK_FALSE(is_identifier("9x"));
    CHECK_FALSE(is_identifier("a-b"));
    CHECK_FALSE(is_identifier(""));
    CHECK(contains_glob_chars("a*b"));
    CHECK_FALSE(contains_glob_chars("ab.c"));
}
