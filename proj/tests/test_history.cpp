#include "orgcoupling/history.hpp"

#include "orgcoupling/commit_log.hpp"
#include "orgcoupling/synth.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <sstream>

using namespace orgcoupling;
using namespace testutil;

namespace {

ServiceMap map_per_repo() {
    ServiceMap map;
    map.rules.push_back({"alpha", "r1", "**"});
    map.rules.push_back({"beta", "r2", "**"});
    return map;
}

std::string line(const std::string& sha, const std::string& repo, const std::string& email,
                 const std::string& ts, const std::string& files = "[{\"path\":\"f\",\"additions\":1,\"deletions\":0}]") {
    return "{\"sha\":\"" + sha + "\",\"repo\":\"" + repo + "\",\"author_name\":\"\"," +
           "\"author_email\":\"" + email + "\",\"timestamp\":\"" + ts + "\",\"files\":" +
           files + "}\n";
}

}  // namespace

TEST_CASE("global order: timestamp first, then repo, then sha") {
    TempDir dir;
    // interleaved timestamps across two repos plus both tiebreak flavors
    write_file(dir / "r1.jsonl",
               line("cccc", "r1", "a@x", "2020-01-01T00:05:00Z") +   // t=300s
               line("aaaa", "r1", "a@x", "2020-01-01T00:01:40Z") +   // t=100s
               line("ffff", "r1", "a@x", "2020-01-01T00:08:20Z") +   // t=500s, sha tiebreak
               line("eeee", "r1", "a@x", "2020-01-01T00:08:20Z"));
    write_file(dir / "r2.jsonl",
               line("dddd", "r2", "b@x", "2020-01-01T00:05:00Z") +   // ties with cccc: repo breaks
               line("bbbb", "r2", "b@x", "2020-01-01T00:03:20Z"));   // t=200s

    const auto history = load_history({commit_log_source((dir / "r1.jsonl").string()),
                                       commit_log_source((dir / "r2.jsonl").string())},
                                      map_per_repo());
    REQUIRE(history.commits.size() == 6);
    // hand-sorted: aaaa(100) bbbb(200) cccc(300,r1) dddd(300,r2) eeee(500) ffff(500)
    CHECK(history.commits[0].sha == "aaaa");
    CHECK(history.commits[1].sha == "bbbb");
    CHECK(history.commits[2].sha == "cccc");
    CHECK(history.commits[3].sha == "dddd");
    CHECK(history.commits[4].sha == "eeee");
    CHECK(history.commits[5].sha == "ffff");
}

TEST_CASE("determinism: source order does not matter") {
    TempDir dir;
    write_file(dir / "one.jsonl", line("aaaa", "r1", "a@x", "2020-01-01T00:00:00Z") +
                                      line("bbbb", "r1", "b@x", "2020-01-02T00:00:00Z"));
    write_file(dir / "two.jsonl", line("cccc", "r2", "c@x", "2020-01-03T00:00:00Z"));

    const auto forward = load_history({commit_log_source((dir / "one.jsonl").string()),
                                       commit_log_source((dir / "two.jsonl").string())},
                                      map_per_repo());
    const auto reverse = load_history({commit_log_source((dir / "two.jsonl").string()),
                                       commit_log_source((dir / "one.jsonl").string())},
                                      map_per_repo());
    std::ostringstream a, b;
    write_commit_log(a, forward.commits);
    write_commit_log(b, reverse.commits);
    CHECK(a.str() == b.str());
    CHECK(forward.services == reverse.services);
}

TEST_CASE("duplicate (repo, sha) pairs collapse; conflicting content throws") {
    TempDir dir;
    const std::string same = line("aaaa", "r1", "a@x", "2020-01-01T00:00:00Z");
    write_file(dir / "one.jsonl", same);
    write_file(dir / "two.jsonl", same + line("bbbb", "r1", "a@x", "2020-01-02T00:00:00Z"));
    const auto merged = load_history({commit_log_source((dir / "one.jsonl").string()),
                                      commit_log_source((dir / "two.jsonl").string())},
                                     map_per_repo());
    CHECK(merged.commits.size() == 2);

    write_file(dir / "conflict.jsonl",
               line("aaaa", "r1", "a@x", "2020-01-01T00:00:00Z",
                    "[{\"path\":\"f\",\"additions\":9,\"deletions\":9}]"));
    CHECK_THROWS_AS(load_history({commit_log_source((dir / "one.jsonl").string()),
                                  commit_log_source((dir / "conflict.jsonl").string())},
                                 map_per_repo()),
                    DuplicateShaConflict);
}

TEST_CASE("same commit in a clone and in its exported log deduplicates") {
    TempDir dir;
    make_basic_fixture_repo(dir.path / "repo");
    const auto direct = load_history({git_repo_source((dir.path / "repo").string(), "fixrepo")},
                                     ServiceMap{{{"svc", "*", "**"}}, UnmappedPolicy::Ignore});
    std::ostringstream log;
    write_commit_log(log, direct.commits);
    write_file(dir / "exported.jsonl", log.str());

    const auto both = load_history({git_repo_source((dir.path / "repo").string(), "fixrepo"),
                                    commit_log_source((dir / "exported.jsonl").string())},
                                   ServiceMap{{{"svc", "*", "**"}}, UnmappedPolicy::Ignore});
    CHECK(both.commits.size() == direct.commits.size());
}

TEST_CASE("identity-less commits are dropped and counted") {
    TempDir dir;
    write_file(dir / "log.jsonl",
               line("aaaa", "r1", "", "2020-01-01T00:00:00Z") +  // empty email AND name
               line("bbbb", "r1", "a@x", "2020-01-02T00:00:00Z"));
    const auto history = load_history({commit_log_source((dir / "log.jsonl").string())},
                                      map_per_repo());
    CHECK(history.commits.size() == 1);
    CHECK(history.summary.dropped_no_identity == 1);
}

TEST_CASE("aliases apply during load") {
    TempDir dir;
    write_file(dir / "log.jsonl",
               line("aaaa", "r1", "jd@corp.com", "2020-01-01T00:00:00Z") +
               line("bbbb", "r1", "jane@home.org", "2020-01-02T00:00:00Z"));
    const AliasMap aliases{{"jd@corp.com", "jane"}};
    const auto history = load_history({commit_log_source((dir / "log.jsonl").string())},
                                      map_per_repo(), aliases);
    CHECK(history.commits[0].author_canonical == "jane");
    CHECK(history.commits[1].author_canonical == "jane");
    CHECK(history.summary.developers == 1);
}

TEST_CASE("unmapped policy error surfaces the offending file") {
    TempDir dir;
    write_file(dir / "log.jsonl", line("aaaa", "r3", "a@x", "2020-01-01T00:00:00Z"));
    ServiceMap strict = map_per_repo();
    strict.unmapped_policy = UnmappedPolicy::Error;
    CHECK_THROWS_AS(load_history({commit_log_source((dir / "log.jsonl").string())}, strict),
                    UnmappedFile);
}

TEST_CASE("churn conservation: mapped plus unmapped equals total") {
    SynthSpec spec;
    spec.seed = 13;
    spec.n_services = 5;
    spec.n_commits = 150;
    const History synth = generate_history(spec);

    // re-route through build_history with a map that drops one service
    std::vector<CommitRecord> raw = synth.commits;
    ServiceMap partial;
    partial.rules.push_back({"svc00", "*", "svc00/**"});
    partial.rules.push_back({"svc01", "*", "svc01/**"});
    partial.rules.push_back({"svc02", "*", "svc02/**"});
    const History mapped = build_history(std::move(raw), partial);

    std::int64_t per_service = 0, unmapped = 0, total = 0;
    for (const auto& commit : mapped.commits) {
        for (const auto& change : commit.changes) {
            total += change.churn();
            if (change.mapped()) per_service += change.churn();
            else unmapped += change.churn();
        }
    }
    CHECK(per_service + unmapped == total);
    CHECK(total == synth.summary.churn_lines);
    CHECK(unmapped > 0);  // svc03/svc04 exist in the synthetic data
    // every observed service is backed by at least one mapped change
    for (const auto& service : mapped.services) {
        bool found = false;
        for (const auto& commit : mapped.commits)
            for (const auto& change : commit.changes)
                if (change.service == service) found = true;
        CHECK(found);
    }
}

TEST_CASE("summary counts mirror the ingest report") {
    SynthSpec spec;
    spec.seed = 21;
    spec.n_commits = 80;
    const History history = generate_history(spec);
    const HistorySummary summary = summarize(history);
    CHECK(summary.commits == 80);
    CHECK(summary.developers == history.summary.developers);
    CHECK(summary.file_changes >= 80);
    CHECK(summary.churn_lines == history.summary.churn_lines);
}
