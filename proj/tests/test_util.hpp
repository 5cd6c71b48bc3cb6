#pragma once

#include "orgcoupling/history.hpp"
#include "orgcoupling/types.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace testutil {

namespace fs = std::filesystem;

// Scratch directory removed on scope exit.
struct TempDir {
    fs::path path;

    TempDir() {
        std::string tmpl = (fs::temp_directory_path() / "orgcoupling-test-XXXXXX").string();
        char* raw = ::mkdtemp(tmpl.data());
        if (!raw) throw std::runtime_error("mkdtemp failed");
        path = raw;
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string str() const { return path.string(); }
    fs::path operator/(const std::string& name) const { return path / name; }
};

inline int shell(const std::string& cmd) { return std::system(cmd.c_str()); }

inline void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    return content;
}

// Commit into `repo` with fixed author/committer dates so fixtures are
// reproducible byte for byte.
inline int git_commit(const fs::path& repo, const std::string& author_name,
                      const std::string& author_email, const std::string& date,
                      const std::string& message) {
    const std::string cmd =
        "GIT_AUTHOR_DATE='" + date + "' GIT_COMMITTER_DATE='" + date + "' "
        "git -C '" + repo.string() + "' -c user.name='" + author_name +
        "' -c user.email='" + author_email + "' commit -q --no-verify -m '" +
        message + "'";
    return shell(cmd);
}

inline int git(const fs::path& repo, const std::string& args) {
    return shell("git -C '" + repo.string() + "' " + args);
}

inline int git_init(const fs::path& repo) {
    fs::create_directories(repo);
    return shell("git init -q -b main '" + repo.string() + "'");
}

// Three plain commits: two text commits with known numstat and one binary
// blob. Used by extractor tests and the pipeline acceptance check.
inline void make_basic_fixture_repo(const fs::path& repo) {
    git_init(repo);
    write_file(repo / "a/one.txt", "x\ny\nz\n");
    write_file(repo / "b/two.txt", "p\nq\n");
    git(repo, "add -A -f");
    git_commit(repo, "Alice", "alice@example.com", "2021-01-01T10:00:00Z", "c1");

    write_file(repo / "a/one.txt", "x\nn1\nn2\nn3\nz\n");  // 3+ / 1-
    write_file(repo / "b/two.txt", "");                    // 0+ / 2-
    git(repo, "add -A -f");
    git_commit(repo, "Bob", "bob@example.com", "2021-01-02T10:00:00Z", "c2");

    write_file(repo / "blob.bin", std::string("\x00\x01\x02\x03", 4));
    git(repo, "add -A -f");
    git_commit(repo, "Alice", "alice@example.com", "2021-01-03T10:00:00Z", "c3");
}

// Richer fixture for end-to-end pipeline checks: bob switches between the
// two service folders (both -> b -> a), alice touches both once plus an
// unmapped binary, so the pair carries nonzero coupling.
inline void make_pipeline_fixture_repo(const fs::path& repo) {
    make_basic_fixture_repo(repo);
    write_file(repo / "b/three.txt", "t1\nt2\nt3\nt4\n");
    git(repo, "add -A -f");
    git_commit(repo, "Bob", "bob@example.com", "2021-01-04T10:00:00Z", "c4");

    write_file(repo / "a/four.txt", "f1\nf2\n");
    git(repo, "add -A -f");
    git_commit(repo, "Bob", "bob@example.com", "2021-01-05T10:00:00Z", "c5");

    write_file(repo / "a/one.txt", "x\nn1\nEDIT\nn3\nz\n");
    git(repo, "add -A -f");
    git_commit(repo, "Alice", "alice@example.com", "2021-01-06T10:00:00Z", "c6");
}

// main: c1, c3; side branch: c2; merge commit on top.
inline void make_merge_fixture_repo(const fs::path& repo) {
    git_init(repo);
    write_file(repo / "base.txt", "root\n");
    git(repo, "add -A -f");
    git_commit(repo, "Alice", "alice@example.com", "2021-02-01T10:00:00Z", "c1");

    git(repo, "checkout -q -b side");
    write_file(repo / "side.txt", "s1\ns2\n");
    git(repo, "add -A -f");
    git_commit(repo, "Carol", "carol@example.com", "2021-02-02T10:00:00Z", "c2");

    git(repo, "checkout -q main");
    write_file(repo / "main.txt", "m\n");
    git(repo, "add -A -f");
    git_commit(repo, "Bob", "bob@example.com", "2021-02-03T10:00:00Z", "c3");

    shell("GIT_AUTHOR_DATE='2021-02-04T10:00:00Z' GIT_COMMITTER_DATE='2021-02-04T10:00:00Z' "
          "git -C '" + repo.string() + "' -c user.name='Bob' -c user.email='bob@example.com' "
          "merge -q --no-ff --no-edit side");
}

// In-memory history building for analysis tests: changes come pre-resolved
// the way load_history would leave them.
struct ChangeSpec {
    std::string service;
    std::int64_t additions = 0;
    std::int64_t deletions = 0;
};

inline orgcoupling::CommitRecord make_commit(const std::string& sha,
                                             const std::string& developer,
                                             orgcoupling::UnixTime timestamp,
                                             const std::vector<ChangeSpec>& changes,
                                             const std::string& repo = "fix") {
    orgcoupling::CommitRecord commit;
    commit.sha = sha;
    commit.repo = repo;
    commit.author_canonical = developer;
    commit.author_email = developer + "@example.com";
    commit.author_name = developer;
    commit.timestamp = timestamp;
    int index = 0;
    for (const auto& spec : changes) {
        orgcoupling::FileChange change;
        change.service = spec.service;
        change.path = spec.service + "/file" + std::to_string(index++) + ".txt";
        change.additions = spec.additions;
        change.deletions = spec.deletions;
        commit.changes.push_back(std::move(change));
    }
    return commit;
}

inline orgcoupling::History make_history(std::vector<orgcoupling::CommitRecord> commits) {
    orgcoupling::History history;
    std::sort(commits.begin(), commits.end(), orgcoupling::commit_order_less);
    history.commits = std::move(commits);
    for (const auto& commit : history.commits)
        for (const auto& change : commit.changes)
            if (change.mapped()) history.services.insert(change.service);
    history.summary = orgcoupling::summarize(history);
    return history;
}

}  // namespace testutil
