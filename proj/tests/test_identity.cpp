#include "orgcoupling/identity.hpp"

#include "orgcoupling/synth.hpp"

#include <doctest.h>

#include <sstream>

using namespace orgcoupling;

TEST_CASE("email local part wins, domains are dropped") {
    CHECK(canonicalize_identity("lwander@users.noreply.github.com", "", {}) == "lwander");
    CHECK(canonicalize_identity("lwander@google.com", "", {}) == "lwander");
    CHECK(canonicalize_identity("LWander@Google.com", "someone", {}) == "lwander");
}

TEST_CASE("name fallback and empty identity") {
    CHECK(canonicalize_identity("", "Jane Doe", {}) == "jane doe");
    CHECK_THROWS_AS(canonicalize_identity("", "", {}), EmptyIdentity);
}

TEST_CASE("alias lookup precedes local-part derivation") {
    const AliasMap aliases{{"jd@corp.com", "jane"}};
    CHECK(canonicalize_identity("jd@corp.com", "", aliases) == "jane");
    CHECK(canonicalize_identity("JD@CORP.COM", "", aliases) == "jane");
    CHECK(canonicalize_identity("other@corp.com", "", aliases) == "other");
}

TEST_CASE("canonical ids are fixed points when fed back without a domain") {
    SplitMix64 rng(7);
    const char* const domains[] = {"@google.com", "@users.noreply.github.com", ""};
    for (int i = 0; i < 500; ++i) {
        std::string local;
        const int len = 1 + static_cast<int>(rng.below(10));
        for (int c = 0; c < len; ++c)
            local += static_cast<char>('a' + rng.below(26));
        const std::string email = local + domains[rng.below(3)];
        const std::string canonical = canonicalize_identity(email, "", {});
        CHECK(canonicalize_identity(canonical, "", {}) == canonical);
    }
}

TEST_CASE("alias file parsing") {
    std::istringstream in(
        "# merge bot identities\n"
        "Robot@ci.example.com = ci-bot\n"
        "\n"
        "jd@corp.com = jane  # trailing comment\n");
    const AliasMap aliases = parse_aliases(in, "aliases.txt");
    REQUIRE(aliases.size() == 2);
    CHECK(aliases.at("robot@ci.example.com") == "ci-bot");
    CHECK(aliases.at("jd@corp.com") == "jane");

    std::istringstream bad("no equals sign here\n");
    CHECK_THROWS_AS(parse_aliases(bad, "bad.txt"), ParseError);
}
