#include "orgcoupling/time_util.hpp"

#include "orgcoupling/synth.hpp"

#include <doctest.h>

using namespace orgcoupling;

TEST_CASE("iso8601 parse of known instants") {
    CHECK(parse_iso8601("1970-01-01T00:00:00Z") == 0);
    CHECK(parse_iso8601("2017-06-05T00:00:00Z") == 1496620800);
    CHECK(parse_iso8601("2020-01-01T00:00:00Z") == 1577836800);
    CHECK(parse_iso8601("2012-03-18T14:30:45Z") == 1332081045);
}

TEST_CASE("iso8601 date-only means midnight UTC") {
    CHECK(parse_iso8601("2023-06-01") == 1685577600);
    CHECK(parse_iso8601("2023-06-01") == parse_iso8601("2023-06-01T00:00:00Z"));
}

TEST_CASE("iso8601 numeric offsets normalize to UTC") {
    CHECK(parse_iso8601("2020-01-01T02:00:00+02:00") == 1577836800);
    CHECK(parse_iso8601("2019-12-31T19:00:00-05:00") == 1577836800);
    CHECK(parse_iso8601("2020-01-01T02:00:00+0200") == 1577836800);
}

TEST_CASE("iso8601 rejects malformed input") {
    CHECK_THROWS_AS(parse_iso8601(""), ParseError);
    CHECK_THROWS_AS(parse_iso8601("yesterday"), ParseError);
    CHECK_THROWS_AS(parse_iso8601("2020-13-01"), ParseError);
    CHECK_THROWS_AS(parse_iso8601("2020-02-30"), ParseError);
    CHECK_THROWS_AS(parse_iso8601("2020-01-01T25:00:00Z"), ParseError);
    CHECK_THROWS_AS(parse_iso8601("2020-01-01Tgarbage"), ParseError);
    CHECK_THROWS_AS(parse_iso8601("2020-01-01T00:00:00Zextra"), ParseError);
}

TEST_CASE("format/parse round-trips across a wide range") {
    SplitMix64 rng(42);
    for (int i = 0; i < 2000; ++i) {
        // ~1970 to ~2100
        const UnixTime t = static_cast<UnixTime>(rng.below(4102444800ULL));
        CHECK(parse_iso8601(format_iso8601(t)) == t);
    }
    CHECK(format_iso8601(1496620800) == "2017-06-05T00:00:00Z");
}

TEST_CASE("durations") {
    CHECK(parse_duration_seconds("365d") == 365LL * 86400);
    CHECK(parse_duration_seconds("12h") == 43200);
    CHECK(parse_duration_seconds("30m") == 1800);
    CHECK(parse_duration_seconds("90s") == 90);
    CHECK(parse_duration_seconds("3600") == 3600);
    CHECK_THROWS_AS(parse_duration_seconds("0d"), ParseError);
    CHECK_THROWS_AS(parse_duration_seconds("d"), ParseError);
    CHECK_THROWS_AS(parse_duration_seconds("10y"), ParseError);
}
