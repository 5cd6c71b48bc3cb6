#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace orgcoupling {

// Seconds since the Unix epoch, UTC.
using UnixTime = std::int64_t;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// history-ingest
class RepoNotFound : public Error { public: using Error::Error; };
class GitInvocationFailed : public Error { public: using Error::Error; };
class MalformedNumstat : public Error { public: using Error::Error; };
class EmptyIdentity : public Error { public: using Error::Error; };
class UnmappedFile : public Error { public: using Error::Error; };
class DuplicateShaConflict : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };

// ownership
class UnknownService : public Error { public: using Error::Error; };
class ZeroContribution : public Error { public: using Error::Error; };

// coupling
class EmptyTouchSet : public Error { public: using Error::Error; };
class InconsistentCounts : public Error { public: using Error::Error; };
class NegativeValue : public Error { public: using Error::Error; };

// evolution / reports
class TooFewWindows : public Error { public: using Error::Error; };
class EmptyMatrix : public Error { public: using Error::Error; };

// github-client
class AuthFailed : public Error { public: using Error::Error; };
class RateLimited : public Error { public: using Error::Error; };
class NotFound : public Error { public: using Error::Error; };
class TransientHttp : public Error { public: using Error::Error; };

// Marker assigned to file changes no service rule matches. The service map
// parser rejects rules that would use it as a real service name.
inline constexpr const char* kUnmappedService = "unmapped";

struct FileChange {
    std::string path;
    std::int64_t additions = 0;
    std::int64_t deletions = 0;
    bool binary = false;   // churn unknown, recorded as 0/0
    std::string service;   // resolved microservice; empty until load_history runs

    std::int64_t churn() const { return additions + deletions; }
    bool mapped() const { return !service.empty() && service != kUnmappedService; }
};

struct CommitRecord {
    std::string sha;
    std::string repo;
    std::string author_name;
    std::string author_email;
    std::string author_canonical;  // derived, see canonicalize_identity
    UnixTime timestamp = 0;        // author timestamp
    std::vector<FileChange> changes;
};

// Global commit ordering: (timestamp, repo, sha).
inline bool commit_order_less(const CommitRecord& lhs, const CommitRecord& rhs) {
    if (lhs.timestamp != rhs.timestamp) return lhs.timestamp < rhs.timestamp;
    if (lhs.repo != rhs.repo) return lhs.repo < rhs.repo;
    return lhs.sha < rhs.sha;
}

struct HistorySummary {
    std::size_t commits = 0;
    std::size_t developers = 0;
    std::size_t file_changes = 0;        // (commit, file) pairs
    std::int64_t churn_lines = 0;        // additions + deletions over all changes
    std::size_t unmapped_changes = 0;    // file changes no rule matched
    std::size_t dropped_no_identity = 0; // commits with neither email nor name
};

struct History {
    std::vector<CommitRecord> commits;   // ascending (timestamp, repo, sha)
    std::set<std::string> services;      // mapped services observed in changes
    std::map<std::string, std::string> identity_aliases;
    HistorySummary summary;
};

}  // namespace orgcoupling
