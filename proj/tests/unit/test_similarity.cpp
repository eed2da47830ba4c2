#include "doctest.h"
#include "scout/similarity.hpp"

using namespace scout;

TEST_CASE("identical strings score exactly 1.0") {
    FuzzyConfig cfg;
    auto r = fuzzy_score("alpha", "alpha", cfg);
    REQUIRE(r.ok());
    CHECK(r.value() == 1.0);
}

TEST_CASE("disjoint alphabets score 0") {
    FuzzyConfig cfg;
    auto r = fuzzy_score("abc", "xyz", cfg);
    REQUIRE(r.ok());
    CHECK(r.value() == 0.0);
    CHECK(bigram_dice("abc", "xyz") == 0.0);
    CHECK(jaro("abc", "xyz") == 0.0);
    CHECK(lcs_ratio("abc", "xyz") == 0.0);
}

TEST_CASE("color/colour hand-computed components") {
    CHECK(bigram_dice("color", "colour") == doctest::Approx(2.0 * 3 / 9).epsilon(1e-12));
    CHECK(jaro("color", "colour") == doctest::Approx((1.0 + 5.0 / 6 + 1.0) / 3).epsilon(1e-12));
    CHECK(jaro_winkler("color", "colour", 0.1, 4) ==
          doctest::Approx(0.9444444444444444 + 4 * 0.1 * (1 - 0.9444444444444444)).epsilon(1e-12));
    CHECK(lcs_ratio("color", "colour") == doctest::Approx(5.0 / 6).epsilon(1e-12));
    FuzzyConfig cfg;
    auto r = fuzzy_score("color", "colour", cfg);
    REQUIRE(r.ok());
    double expected = (2.0 * 3 / 9 + 0.9666666666666667 + 5.0 / 6) / 3.0;
    CHECK(r.value() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("empty inputs are invalid queries") {
    FuzzyConfig cfg;
    CHECK_FALSE(fuzzy_score("", "x", cfg).ok());
    CHECK_FALSE(fuzzy_score("x", "", cfg).ok());
}

TEST_CASE("bigram dice uses multisets") {
    // "aaa" has bigrams {aa, aa}; "aa" has {aa}: common = 1
    CHECK(bigram_dice("aaa", "aa") == doctest::Approx(2.0 * 1 / 3).epsilon(1e-12));
}

TEST_CASE("jaro-winkler prefix cap") {
    double jw_full = jaro_winkler("prefixes", "prefixed", 0.1, 4);
    double j = jaro("prefixes", "prefixed");
    CHECK(jw_full == doctest::Approx(j + 4 * 0.1 * (1 - j)).epsilon(1e-12));
}

TEST_CASE("typo ranks the intended name highest") {
    FuzzyConfig cfg;
    double right = fuzzy_score("reslove_path", "resolve_path", cfg).value();
    double wrong1 = fuzzy_score("reslove_path", "parse_config", cfg).value();
    double wrong2 = fuzzy_score("reslove_path", "Config.get", cfg).value();
    CHECK(right > wrong1);
    CHECK(right > wrong2);
}
