#include "orgcoupling/synth.hpp"

#include "orgcoupling/coupling.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace orgcoupling;

TEST_CASE("splitmix64 matches the published reference stream for seed 0") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(rng.next() == 0x06c45d188009454fULL);
    CHECK(rng.next() == 0xf88bb8a8724c81ecULL);
    CHECK(rng.next() == 0x1b39896a51a8749bULL);
}

TEST_CASE("unit() stays in [0,1), below() respects its bound") {
    SplitMix64 rng(123);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(rng.below(17) < 17);
    }
}

TEST_CASE("same seed, same history; different seed, different history") {
    SynthSpec spec;
    spec.seed = 404;
    spec.n_commits = 100;
    const History a = generate_history(spec);
    const History b = generate_history(spec);
    REQUIRE(a.commits.size() == b.commits.size());
    for (std::size_t i = 0; i < a.commits.size(); ++i) {
        CHECK(a.commits[i].sha == b.commits[i].sha);
        CHECK(a.commits[i].timestamp == b.commits[i].timestamp);
        CHECK(a.commits[i].author_canonical == b.commits[i].author_canonical);
    }
    spec.seed = 405;
    const History c = generate_history(spec);
    bool differs = false;
    for (std::size_t i = 0; i < a.commits.size() && !differs; ++i)
        differs = a.commits[i].sha != c.commits[i].sha;
    CHECK(differs);
}

TEST_CASE("timestamps strictly increase and churn honours its range") {
    SynthSpec spec;
    spec.seed = 11;
    spec.n_commits = 150;
    spec.churn_min = 2;
    spec.churn_max = 9;
    const History history = generate_history(spec);
    for (std::size_t i = 1; i < history.commits.size(); ++i)
        CHECK(history.commits[i].timestamp > history.commits[i - 1].timestamp);
    for (const auto& commit : history.commits)
        for (const auto& change : commit.changes) {
            CHECK(change.additions >= 2);
            CHECK(change.additions <= 9);
            CHECK(change.deletions >= 2);
            CHECK(change.deletions <= 9);
        }
}

TEST_CASE("zero cross-contribution keeps every developer at home") {
    SynthSpec spec;
    spec.seed = 8;
    spec.n_services = 4;
    spec.n_developers = 8;
    spec.n_commits = 160;
    spec.cross_contribution_rate = 0.0;
    spec.both_touch_rate = 0.0;
    const History history = generate_history(spec);
    for (const auto& commit : history.commits) {
        REQUIRE(commit.changes.size() == 1);
        // dev NN stays on svc (NN mod services)
        const int dev = std::stoi(commit.author_canonical.substr(3));
        const int svc = std::stoi(commit.changes[0].service.substr(3));
        CHECK(svc == dev % spec.n_services);
    }
}

TEST_CASE("all-both commits on a two-service system saturate the weight") {
    SynthSpec spec;
    spec.seed = 15;
    spec.n_services = 2;
    spec.n_developers = 1;
    spec.n_commits = 8;
    spec.cross_contribution_rate = 0.0;
    spec.both_touch_rate = 1.0;
    spec.churn_min = 1;  // avoid zero-churn harmonic means
    const History history = generate_history(spec);
    for (const auto& commit : history.commits) CHECK(commit.changes.size() == 2);
    const auto dc = developer_oc(history, "dev00", "svc00", "svc01");
    CHECK(dc.n == 8);
    CHECK(dc.k == 14);
    CHECK(dc.switch_weight == 1.0);
}

TEST_CASE("zero-churn file changes occur when the range allows them") {
    SynthSpec spec;
    spec.seed = 29;
    spec.n_commits = 300;
    spec.churn_min = 0;
    spec.churn_max = 1;
    const History history = generate_history(spec);
    bool zero_churn_seen = false;
    for (const auto& commit : history.commits)
        for (const auto& change : commit.changes)
            if (change.churn() == 0) zero_churn_seen = true;
    CHECK(zero_churn_seen);
}

TEST_CASE("invalid specs are rejected") {
    SynthSpec spec;
    spec.n_services = 0;
    CHECK_THROWS_AS(generate_history(spec), Error);
    spec = SynthSpec{};
    spec.cross_contribution_rate = 1.5;
    CHECK_THROWS_AS(generate_history(spec), Error);
    spec = SynthSpec{};
    spec.churn_min = 5;
    spec.churn_max = 2;
    CHECK_THROWS_AS(generate_history(spec), Error);
}
