#pragma once

#include "orgcoupling/identity.hpp"
#include "orgcoupling/service_map.hpp"
#include "orgcoupling/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace orgcoupling {

struct HistorySource {
    enum class Kind { CommitLog, GitRepo };
    Kind kind = Kind::CommitLog;
    std::string path;
    std::string slug;            // GitRepo only; empty means basename of path
    bool include_merges = false; // GitRepo only
};

HistorySource commit_log_source(std::string path);
HistorySource git_repo_source(std::string path, std::string slug = "",
                              bool include_merges = false);

// Merges every source into one deterministic History: canonical identities,
// per-file service resolution, (repo, sha) dedup, global (timestamp, repo,
// sha) ordering. Commits whose identity cannot be derived are dropped and
// counted in the summary. Git sources are extracted concurrently.
History load_history(const std::vector<HistorySource>& sources,
                     const ServiceMap& map,
                     const AliasMap& aliases = {});

// Same merge applied to already-extracted records (used by fetch output).
History build_history(std::vector<CommitRecord> commits,
                      const ServiceMap& map,
                      const AliasMap& aliases = {});

HistorySummary summarize(const History& history);

// Commits with timestamp in [from, to); nullopt leaves a side open.
History filter_by_time(const History& history,
                       std::optional<UnixTime> from,
                       std::optional<UnixTime> to);

}  // namespace orgcoupling
