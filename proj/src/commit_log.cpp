#include "orgcoupling/commit_log.hpp"

#include "orgcoupling/time_util.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace orgcoupling {

using nlohmann::json;

std::string commit_log_line(const CommitRecord& commit) {
    json files = json::array();
    for (const auto& change : commit.changes) {
        json f{{"path", change.path},
               {"additions", change.additions},
               {"deletions", change.deletions}};
        if (change.binary) f["binary"] = true;
        files.push_back(std::move(f));
    }
    const json line{{"sha", commit.sha},
                    {"repo", commit.repo},
                    {"author_name", commit.author_name},
                    {"author_email", commit.author_email},
                    {"timestamp", format_iso8601(commit.timestamp)},
                    {"files", std::move(files)}};
    return line.dump();
}

void write_commit_log(std::ostream& out, const std::vector<CommitRecord>& commits) {
    for (const auto& commit : commits) out << commit_log_line(commit) << '\n';
}

namespace {

CommitRecord parse_line(const json& obj, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + ": commit entry is not an object");
    const auto require = [&](const char* key) -> const json& {
        const auto it = obj.find(key);
        if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
        return *it;
    };
    CommitRecord commit;
    commit.sha = require("sha").get<std::string>();
    commit.repo = require("repo").get<std::string>();
    commit.author_name = obj.value("author_name", std::string{});
    commit.author_email = obj.value("author_email", std::string{});
    commit.timestamp = parse_iso8601(require("timestamp").get<std::string>());
    if (commit.sha.empty()) throw ParseError(where + ": empty sha");
    if (commit.repo.empty()) throw ParseError(where + ": empty repo");
    const json& files = require("files");
    if (!files.is_array()) throw ParseError(where + ": 'files' is not an array");
    for (const auto& f : files) {
        FileChange change;
        const auto it_path = f.find("path");
        if (it_path == f.end() || !it_path->is_string() || it_path->get<std::string>().empty())
            throw ParseError(where + ": file entry with missing or empty 'path'");
        change.path = it_path->get<std::string>();
        change.additions = f.value("additions", static_cast<std::int64_t>(0));
        change.deletions = f.value("deletions", static_cast<std::int64_t>(0));
        change.binary = f.value("binary", false);
        if (change.additions < 0 || change.deletions < 0)
            throw ParseError(where + ": negative churn for '" + change.path + "'");
        commit.changes.push_back(std::move(change));
    }
    return commit;
}

}  // namespace

std::vector<CommitRecord> read_commit_log(std::istream& in, const std::string& source_name) {
    std::vector<CommitRecord> commits;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string where = source_name + ":" + std::to_string(lineno);
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(where + ": " + e.what());
        }
        commits.push_back(parse_line(obj, where));
    }
    return commits;
}

std::vector<CommitRecord> load_commit_log_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open commit log: " + path);
    return read_commit_log(in, path);
}

void write_commit_log_file(const std::string& path, const std::vector<CommitRecord>& commits) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write commit log: " + path);
    write_commit_log(out, commits);
    out.flush();
    if (!out) throw IoError("failed while writing commit log: " + path);
}

}  // namespace orgcoupling
