#pragma once

#include "orgcoupling/types.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orgcoupling {

struct FetchJob {
    std::string owner;
    std::string repo;
    std::optional<UnixTime> since;
    std::optional<UnixTime> until;
    std::string token;      // empty = anonymous (low request budget)
    std::string cache_dir;  // per-commit cache, keyed (owner, repo, sha)
};

enum class RatePolicy { Wait, Fail };

struct FetchOptions {
    std::string api_base = "https://api.github.com";
    int parallelism = 4;       // concurrent per-commit detail fetches
    RatePolicy rate_policy = RatePolicy::Wait;
    int rate_threshold = 0;    // gate closes when remaining <= threshold
    int max_retries = 3;       // transient HTTP failures
    int retry_base_ms = 500;   // exponential backoff base
    bool include_merges = false;
};

struct FetchReport {
    std::size_t commits_fetched = 0;     // detail-fetched from the network
    std::size_t commits_from_cache = 0;
    std::size_t requests_made = 0;
    std::size_t rate_limit_waits = 0;
    std::size_t merges_excluded = 0;
};

// Seconds to pause before the next request. Zero when budget remains above
// the threshold or is still unknown (remaining < 0). Throws RateLimited
// when the budget is exhausted and the policy is Fail.
std::int64_t rate_limit_gate(long remaining, UnixTime reset_at, UnixTime now,
                             RatePolicy policy, int threshold = 0);

// Lists commits page by page (100 per page), then fetches per-commit file
// stats, consulting the on-disk cache first. Every fetched commit is cached
// (atomic write) before it is returned. Output is sorted like a History.
std::pair<std::vector<CommitRecord>, FetchReport>
fetch_repo_commits(const FetchJob& job, const FetchOptions& options = {});

}  // namespace orgcoupling
