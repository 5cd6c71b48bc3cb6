#include "orgcoupling/glob.hpp"

#include <doctest.h>

using orgcoupling::glob_match;

TEST_CASE("literal and single-segment wildcards") {
    CHECK(glob_match("orca", "orca"));
    CHECK_FALSE(glob_match("orca", "orca-extra"));
    CHECK(glob_match("orca*", "orca-extra"));
    CHECK(glob_match("*.kt", "main.kt"));
    CHECK_FALSE(glob_match("*.kt", "src/main.kt"));  // '*' stays inside a segment
    CHECK(glob_match("f?o", "foo"));
    CHECK_FALSE(glob_match("f?o", "fo"));
}

TEST_CASE("double star spans segments") {
    CHECK(glob_match("**", "src/main.kt"));
    CHECK(glob_match("**", "README.md"));
    CHECK(glob_match("src/a/**", "src/a/x"));
    CHECK(glob_match("src/a/**", "src/a/deep/nested/file.txt"));
    CHECK_FALSE(glob_match("src/a/**", "src/ab/x"));
    CHECK_FALSE(glob_match("src/a/**", "README.md"));
    CHECK(glob_match("**/*.md", "README.md"));
    CHECK(glob_match("**/*.md", "docs/guide/intro.md"));
    CHECK_FALSE(glob_match("**/*.md", "docs/guide/intro.txt"));
    CHECK(glob_match("src/**/test/*.cc", "src/a/b/test/x.cc"));
    CHECK(glob_match("src/**/test/*.cc", "src/test/x.cc"));
}

TEST_CASE("empty-ish edges") {
    CHECK(glob_match("*", "anything"));
    CHECK_FALSE(glob_match("a/b", "a"));
    CHECK_FALSE(glob_match("a", "a/b"));
}
