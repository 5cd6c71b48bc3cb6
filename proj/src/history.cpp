#include "orgcoupling/history.hpp"

#include "orgcoupling/commit_log.hpp"
#include "orgcoupling/git_extract.hpp"

#include <algorithm>
#include <filesystem>
#include <future>
#include <map>
#include <utility>

namespace orgcoupling {

HistorySource commit_log_source(std::string path) {
    HistorySource source;
    source.kind = HistorySource::Kind::CommitLog;
    source.path = std::move(path);
    return source;
}

HistorySource git_repo_source(std::string path, std::string slug, bool include_merges) {
    HistorySource source;
    source.kind = HistorySource::Kind::GitRepo;
    source.path = std::move(path);
    source.slug = std::move(slug);
    source.include_merges = include_merges;
    return source;
}

namespace {

std::string slug_for(const HistorySource& source) {
    if (!source.slug.empty()) return source.slug;
    auto name = std::filesystem::path(source.path).filename().string();
    if (name.empty())  // trailing slash
        name = std::filesystem::path(source.path).parent_path().filename().string();
    if (name.size() > 4 && name.ends_with(".git")) name.resize(name.size() - 4);
    return name;
}

bool same_commit_content(const CommitRecord& a, const CommitRecord& b) {
    if (a.author_name != b.author_name || a.author_email != b.author_email ||
        a.timestamp != b.timestamp || a.changes.size() != b.changes.size())
        return false;
    for (std::size_t i = 0; i < a.changes.size(); ++i) {
        const auto& ca = a.changes[i];
        const auto& cb = b.changes[i];
        if (ca.path != cb.path || ca.additions != cb.additions ||
            ca.deletions != cb.deletions || ca.binary != cb.binary)
            return false;
    }
    return true;
}

}  // namespace

History build_history(std::vector<CommitRecord> commits,
                      const ServiceMap& map,
                      const AliasMap& aliases) {
    History history;
    history.identity_aliases = aliases;

    std::map<std::pair<std::string, std::string>, std::size_t> seen;
    std::vector<CommitRecord> merged;
    merged.reserve(commits.size());

    for (auto& commit : commits) {
        try {
            commit.author_canonical =
                canonicalize_identity(commit.author_email, commit.author_name, aliases);
        } catch (const EmptyIdentity&) {
            ++history.summary.dropped_no_identity;
            continue;
        }
        for (auto& change : commit.changes)
            change.service = resolve_service(commit.repo, change.path, map);

        const auto key = std::make_pair(commit.repo, commit.sha);
        const auto it = seen.find(key);
        if (it != seen.end()) {
            if (!same_commit_content(merged[it->second], commit))
                throw DuplicateShaConflict("commit " + commit.repo + "@" + commit.sha +
                                           " appears twice with differing content");
            continue;
        }
        seen.emplace(key, merged.size());
        merged.push_back(std::move(commit));
    }

    std::sort(merged.begin(), merged.end(), commit_order_less);
    history.commits = std::move(merged);

    for (const auto& commit : history.commits)
        for (const auto& change : commit.changes)
            if (change.mapped()) history.services.insert(change.service);

    history.summary = summarize(history);  // keeps the dropped counter
    return history;
}

History load_history(const std::vector<HistorySource>& sources,
                     const ServiceMap& map,
                     const AliasMap& aliases) {
    // One extraction job per git repo; merging stays a sequential fold.
    std::vector<std::future<std::vector<CommitRecord>>> jobs(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const auto& source = sources[i];
        if (source.kind == HistorySource::Kind::GitRepo) {
            jobs[i] = std::async(std::launch::async, [&source] {
                return extract_from_git(source.path, slug_for(source), source.include_merges);
            });
        }
    }

    std::vector<CommitRecord> all;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        std::vector<CommitRecord> batch;
        if (sources[i].kind == HistorySource::Kind::GitRepo) batch = jobs[i].get();
        else batch = load_commit_log_file(sources[i].path);
        std::move(batch.begin(), batch.end(), std::back_inserter(all));
    }
    return build_history(std::move(all), map, aliases);
}

HistorySummary summarize(const History& history) {
    HistorySummary summary;
    summary.commits = history.commits.size();
    std::set<std::string> developers;
    for (const auto& commit : history.commits) {
        developers.insert(commit.author_canonical);
        summary.file_changes += commit.changes.size();
        for (const auto& change : commit.changes) {
            summary.churn_lines += change.churn();
            if (!change.mapped()) ++summary.unmapped_changes;
        }
    }
    summary.developers = developers.size();
    summary.dropped_no_identity = history.summary.dropped_no_identity;
    return summary;
}

History filter_by_time(const History& history,
                       std::optional<UnixTime> from,
                       std::optional<UnixTime> to) {
    History filtered;
    filtered.identity_aliases = history.identity_aliases;
    for (const auto& commit : history.commits) {
        if (from && commit.timestamp < *from) continue;
        if (to && commit.timestamp >= *to) continue;
        filtered.commits.push_back(commit);
        for (const auto& change : commit.changes)
            if (change.mapped()) filtered.services.insert(change.service);
    }
    filtered.summary = summarize(filtered);
    return filtered;
}

}  // namespace orgcoupling
