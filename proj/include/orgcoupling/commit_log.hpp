#pragma once

#include "orgcoupling/types.hpp"

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace orgcoupling {

// Portable commit log: JSON Lines, one commit per line, UTF-8.
//   {"sha":.., "repo":.., "author_name":.., "author_email":..,
//    "timestamp":"2017-06-05T00:00:00Z",
//    "files":[{"path":.., "additions":N, "deletions":N, "binary":true?}]}
// Unknown churn is recorded as additions = 0, deletions = 0 with "binary".

std::string commit_log_line(const CommitRecord& commit);
void write_commit_log(std::ostream& out, const std::vector<CommitRecord>& commits);

std::vector<CommitRecord> read_commit_log(std::istream& in, const std::string& source_name);
std::vector<CommitRecord> load_commit_log_file(const std::string& path);
void write_commit_log_file(const std::string& path, const std::vector<CommitRecord>& commits);

}  // namespace orgcoupling
