#include "orgcoupling/synth.hpp"

#include <cstdio>
#include <set>

namespace orgcoupling {

namespace {

std::string indexed_name(const char* prefix, std::uint64_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%02llu", prefix,
                  static_cast<unsigned long long>(index));
    return buf;
}

std::string synth_sha(std::uint64_t counter, SplitMix64& rng) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%08llx%016llx%016llx",
                  static_cast<unsigned long long>(counter & 0xffffffffULL),
                  static_cast<unsigned long long>(rng.next()),
                  static_cast<unsigned long long>(rng.next()));
    return buf;
}

}  // namespace

History generate_history(const SynthSpec& spec) {
    if (spec.n_services < 1 || spec.n_developers < 1 || spec.n_commits < 0)
        throw Error("synthetic spec needs at least one service and developer");
    if (spec.cross_contribution_rate < 0.0 || spec.cross_contribution_rate > 1.0 ||
        spec.both_touch_rate < 0.0 || spec.both_touch_rate > 1.0)
        throw Error("synthetic rates must lie in [0, 1]");
    if (spec.churn_min < 0 || spec.churn_max < spec.churn_min)
        throw Error("invalid churn range");
    if (spec.step_seconds < 1) throw Error("step_seconds must be positive");

    SplitMix64 rng(spec.seed);
    History history;

    const auto services = static_cast<std::uint64_t>(spec.n_services);
    const auto developers = static_cast<std::uint64_t>(spec.n_developers);
    const std::int64_t churn_span = spec.churn_max - spec.churn_min + 1;

    UnixTime t = spec.start_time;
    for (int i = 0; i < spec.n_commits; ++i) {
        const std::uint64_t dev = rng.below(developers);
        std::uint64_t primary = dev % services;  // home service
        if (services > 1 && rng.unit() < spec.cross_contribution_rate) {
            const std::uint64_t other = rng.below(services - 1);
            primary = other >= primary ? other + 1 : other;
        }
        std::set<std::uint64_t> touched{primary};
        if (services > 1 && rng.unit() < spec.both_touch_rate) {
            const std::uint64_t other = rng.below(services - 1);
            touched.insert(other >= primary ? other + 1 : other);
        }

        CommitRecord commit;
        commit.repo = "synth";
        commit.author_canonical = indexed_name("dev", dev);
        commit.author_email = commit.author_canonical + "@example.com";
        commit.author_name = "Dev " + std::to_string(dev);
        commit.timestamp = t;
        commit.sha = synth_sha(static_cast<std::uint64_t>(i), rng);
        for (const std::uint64_t svc : touched) {
            FileChange change;
            change.service = indexed_name("svc", svc);
            change.path = change.service + "/f" + std::to_string(rng.below(4)) + ".txt";
            change.additions = spec.churn_min + static_cast<std::int64_t>(
                                                    rng.below(static_cast<std::uint64_t>(churn_span)));
            change.deletions = spec.churn_min + static_cast<std::int64_t>(
                                                    rng.below(static_cast<std::uint64_t>(churn_span)));
            history.services.insert(change.service);
            commit.changes.push_back(std::move(change));
        }
        history.commits.push_back(std::move(commit));
        t += spec.step_seconds + static_cast<std::int64_t>(rng.below(3600));
    }

    HistorySummary summary;
    summary.commits = history.commits.size();
    std::set<std::string> devs;
    for (const auto& commit : history.commits) {
        devs.insert(commit.author_canonical);
        summary.file_changes += commit.changes.size();
        for (const auto& change : commit.changes) summary.churn_lines += change.churn();
    }
    summary.developers = devs.size();
    history.summary = summary;
    return history;
}

}  // namespace orgcoupling
