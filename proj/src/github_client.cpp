#include "orgcoupling/github_client.hpp"

#include "orgcoupling/commit_log.hpp"
#include "orgcoupling/time_util.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace orgcoupling {

using nlohmann::json;
namespace fs = std::filesystem;

std::int64_t rate_limit_gate(long remaining, UnixTime reset_at, UnixTime now,
                             RatePolicy policy, int threshold) {
    if (remaining < 0) return 0;  // budget not yet known
    if (remaining > threshold) return 0;
    if (policy == RatePolicy::Fail)
        throw RateLimited("request budget exhausted (remaining = " +
                          std::to_string(remaining) + "), resets at " +
                          format_iso8601(reset_at));
    return std::max<std::int64_t>(0, reset_at - now);
}

namespace {

UnixTime wall_now() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

struct RateState {
    std::mutex mutex;
    long remaining = -1;
    UnixTime reset_at = 0;
};

struct Counters {
    std::atomic<std::size_t> requests{0};
    std::atomic<std::size_t> waits{0};
};

long header_long(const httplib::Response& res, const char* name, long fallback) {
    if (!res.has_header(name)) return fallback;
    try {
        return std::stol(res.get_header_value(name));
    } catch (...) {
        return fallback;
    }
}

void update_rate_state(RateState& state, const httplib::Response& res) {
    std::lock_guard lock(state.mutex);
    state.remaining = header_long(res, "x-ratelimit-remaining", state.remaining);
    state.reset_at = header_long(res, "x-ratelimit-reset", state.reset_at);
}

httplib::Headers request_headers(const FetchJob& job) {
    httplib::Headers headers{{"User-Agent", "orgcoupling"},
                             {"Accept", "application/vnd.github+json"}};
    if (!job.token.empty()) headers.emplace("Authorization", "Bearer " + job.token);
    return headers;
}

// One guarded GET: rate gate, retries with exponential backoff on transient
// failures, rate-aware handling of 403/429.
json get_json(httplib::Client& client, const std::string& path, const FetchJob& job,
              const FetchOptions& options, RateState& state, Counters& counters) {
    const auto headers = request_headers(job);
    int transient_failures = 0;
    while (true) {
        long remaining;
        UnixTime reset_at;
        {
            std::lock_guard lock(state.mutex);
            remaining = state.remaining;
            reset_at = state.reset_at;
        }
        const std::int64_t pause =
            rate_limit_gate(remaining, reset_at, wall_now(), options.rate_policy,
                            options.rate_threshold);
        if (pause > 0) {
            counters.waits.fetch_add(1);
            std::this_thread::sleep_for(std::chrono::seconds(pause));
            std::lock_guard lock(state.mutex);
            state.remaining = -1;  // assume the window reset
        }

        auto result = client.Get(path, headers);
        counters.requests.fetch_add(1);
        if (!result) {
            if (++transient_failures > options.max_retries)
                throw TransientHttp("connection to " + options.api_base + path +
                                    " failed repeatedly");
            std::this_thread::sleep_for(std::chrono::milliseconds(
                options.retry_base_ms * (1L << (transient_failures - 1))));
            continue;
        }
        update_rate_state(state, *result);
        const int status = result->status;
        if (status == 200) {
            try {
                return json::parse(result->body);
            } catch (const json::exception& e) {
                throw TransientHttp(std::string("invalid JSON from ") + path + ": " + e.what());
            }
        }
        if (status == 401) throw AuthFailed("401 from " + path + " (bad credentials?)");
        if (status == 404) throw NotFound("repository not found: " + job.owner + "/" + job.repo);
        if (status == 403 || status == 429) {
            const long rem = header_long(*result, "x-ratelimit-remaining", -1);
            if (rem == 0) {
                // exhausted budget; the gate waits (or fails) next round
                if (++transient_failures > options.max_retries)
                    throw RateLimited("still rate-limited after " +
                                      std::to_string(options.max_retries) + " waits on " + path);
                continue;
            }
            throw AuthFailed(std::to_string(status) + " from " + path);
        }
        if (status >= 500) {
            if (++transient_failures > options.max_retries)
                throw TransientHttp("status " + std::to_string(status) + " from " + path +
                                    " after " + std::to_string(options.max_retries) + " retries");
            std::this_thread::sleep_for(std::chrono::milliseconds(
                options.retry_base_ms * (1L << (transient_failures - 1))));
            continue;
        }
        throw TransientHttp("unexpected status " + std::to_string(status) + " from " + path);
    }
}

std::string url_encode(const std::string& s) {
    std::ostringstream out;
    for (const unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') out << c;
        else {
            char buf[4];
            std::snprintf(buf, sizeof(buf), "%%%02X", c);
            out << buf;
        }
    }
    return out.str();
}

struct ListedCommit {
    std::string sha;
    std::size_t parents = 0;
};

fs::path cache_path(const FetchJob& job, const std::string& sha) {
    return fs::path(job.cache_dir) / job.owner / job.repo / (sha + ".json");
}

CommitRecord detail_to_record(const json& detail, const std::string& repo_slug) {
    CommitRecord record;
    record.sha = detail.at("sha").get<std::string>();
    record.repo = repo_slug;
    const json& author = detail.at("commit").at("author");
    record.author_name = author.value("name", std::string{});
    record.author_email = author.value("email", std::string{});
    record.timestamp = parse_iso8601(author.at("date").get<std::string>());
    for (const auto& file : detail.value("files", json::array())) {
        FileChange change;
        change.path = file.at("filename").get<std::string>();  // renamed keeps new path
        change.additions = file.value("additions", static_cast<std::int64_t>(0));
        change.deletions = file.value("deletions", static_cast<std::int64_t>(0));
        record.changes.push_back(std::move(change));
    }
    return record;
}

void cache_store(const FetchJob& job, const CommitRecord& record) {
    const fs::path path = cache_path(job, record.sha);
    fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write cache file: " + tmp.string());
        out << commit_log_line(record) << '\n';
    }
    fs::rename(tmp, path);  // atomic within the cache directory
}

std::optional<CommitRecord> cache_load(const FetchJob& job, const std::string& sha) {
    const fs::path path = cache_path(job, sha);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    auto records = read_commit_log(in, path.string());
    if (records.size() != 1 || records[0].sha != sha)
        throw ParseError("corrupt cache entry: " + path.string());
    return std::move(records[0]);
}

}  // namespace

std::pair<std::vector<CommitRecord>, FetchReport>
fetch_repo_commits(const FetchJob& job, const FetchOptions& options) {
    if (job.since && job.until && *job.since >= *job.until)
        throw Error("fetch window start must precede its end");

    httplib::Client list_client(options.api_base);
    list_client.set_connection_timeout(30);
    list_client.set_read_timeout(60);

    RateState state;
    Counters counters;
    FetchReport report;

    // Page through the list endpoint; file stats require per-commit detail.
    std::vector<ListedCommit> listed;
    const std::string base_path = "/repos/" + url_encode(job.owner) + "/" +
                                  url_encode(job.repo) + "/commits";
    for (int page = 1;; ++page) {
        std::string path = base_path + "?per_page=100&page=" + std::to_string(page);
        if (job.since) path += "&since=" + url_encode(format_iso8601(*job.since));
        if (job.until) path += "&until=" + url_encode(format_iso8601(*job.until));
        const json page_json = get_json(list_client, path, job, options, state, counters);
        if (!page_json.is_array())
            throw TransientHttp("commit list endpoint did not return an array");
        for (const auto& item : page_json) {
            ListedCommit entry;
            entry.sha = item.at("sha").get<std::string>();
            entry.parents = item.value("parents", json::array()).size();
            listed.push_back(std::move(entry));
        }
        if (page_json.size() < 100) break;
    }

    std::vector<CommitRecord> commits;
    std::vector<std::string> to_fetch;
    for (const auto& entry : listed) {
        if (!options.include_merges && entry.parents >= 2) {
            ++report.merges_excluded;
            continue;
        }
        if (auto cached = cache_load(job, entry.sha)) {
            ++report.commits_from_cache;
            commits.push_back(std::move(*cached));
        } else {
            to_fetch.push_back(entry.sha);
        }
    }

    if (!to_fetch.empty()) {
        const std::size_t workers = std::max(
            1, std::min<int>(options.parallelism, static_cast<int>(to_fetch.size())));
        std::vector<CommitRecord> fetched(to_fetch.size());
        std::atomic<std::size_t> next{0};
        std::mutex error_mutex;
        std::exception_ptr first_error;

        const auto worker = [&] {
            httplib::Client detail_client(options.api_base);
            detail_client.set_connection_timeout(30);
            detail_client.set_read_timeout(60);
            while (true) {
                const std::size_t index = next.fetch_add(1);
                if (index >= to_fetch.size()) return;
                {
                    std::lock_guard lock(error_mutex);
                    if (first_error) return;
                }
                try {
                    const json detail = get_json(detail_client, base_path + "/" + to_fetch[index],
                                                 job, options, state, counters);
                    CommitRecord record = detail_to_record(detail, job.repo);
                    cache_store(job, record);
                    fetched[index] = std::move(record);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };

        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& thread : pool) thread.join();
        if (first_error) std::rethrow_exception(first_error);

        report.commits_fetched = fetched.size();
        std::move(fetched.begin(), fetched.end(), std::back_inserter(commits));
    }

    report.requests_made = counters.requests.load();
    report.rate_limit_waits = counters.waits.load();
    std::sort(commits.begin(), commits.end(), commit_order_less);
    return {std::move(commits), report};
}

}  // namespace orgcoupling
