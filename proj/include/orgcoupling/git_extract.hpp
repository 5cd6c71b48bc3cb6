#pragma once

#include "orgcoupling/types.hpp"

#include <string>
#include <vector>

namespace orgcoupling {

// Runs the system git over a local clone (work tree or bare) and parses
// `log --numstat` into CommitRecords. Covers every commit reachable from
// HEAD; merge commits (2+ parents) are dropped unless include_merges.
// Binary entries ("-" churn) become additions = 0, deletions = 0, binary.
std::vector<CommitRecord> extract_from_git(const std::string& repo_path,
                                           const std::string& repo_slug,
                                           bool include_merges = false);

namespace detail {

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

CommandResult run_command(const std::string& command);
std::string shell_quote(const std::string& arg);

// Exposed for tests: parses the exact stream produced by the log invocation.
std::vector<CommitRecord> parse_numstat_log(const std::string& text,
                                            const std::string& repo_slug,
                                            bool include_merges);

}  // namespace detail

}  // namespace orgcoupling
