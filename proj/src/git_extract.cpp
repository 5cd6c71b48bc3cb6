#include "orgcoupling/git_extract.hpp"

#include <atomic>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

namespace orgcoupling {

namespace detail {

std::string shell_quote(const std::string& arg) {
    std::string quoted = "'";
    for (const char c : arg) {
        if (c == '\'') quoted += "'\\''";
        else quoted += c;
    }
    quoted += "'";
    return quoted;
}

CommandResult run_command(const std::string& command) {
    static std::atomic<unsigned> counter{0};
    const auto stderr_path =
        std::filesystem::temp_directory_path() /
        ("orgcoupling-stderr-" + std::to_string(::getpid()) + "-" +
         std::to_string(counter.fetch_add(1)) + ".txt");

    CommandResult result;
    const std::string full = command + " 2>" + shell_quote(stderr_path.string());
    FILE* pipe = ::popen(full.c_str(), "r");
    if (!pipe) throw IoError("failed to spawn: " + command);
    char buffer[8192];
    std::size_t n = 0;
    while ((n = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0)
        result.out.append(buffer, n);
    const int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

    std::ifstream err(stderr_path, std::ios::binary);
    if (err) {
        std::ostringstream sink;
        sink << err.rdbuf();
        result.err = sink.str();
    }
    std::error_code ec;
    std::filesystem::remove(stderr_path, ec);
    return result;
}

namespace {

constexpr char kRecordMark = '\x1e';
constexpr char kFieldMark = '\x1f';

bool is_hex40(const std::string& s) {
    if (s.size() != 40) return false;
    for (const char c : s)
        if (!std::isxdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (const char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

std::vector<CommitRecord> parse_numstat_log(const std::string& text,
                                            const std::string& repo_slug,
                                            bool include_merges) {
    std::vector<CommitRecord> commits;
    CommitRecord current;
    bool have_current = false;
    bool skip_current = false;

    const auto flush = [&] {
        if (have_current && !skip_current) commits.push_back(std::move(current));
        current = CommitRecord{};
        have_current = false;
        skip_current = false;
    };

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == kRecordMark) {
            flush();
            const auto fields = split(line.substr(1), kFieldMark);
            if (fields.size() != 5 || !is_hex40(fields[0]) || fields[4].empty())
                throw MalformedNumstat("unparseable log header: " + line);
            std::size_t parents = 0;
            for (const auto& p : split(fields[1], ' '))
                if (!p.empty()) ++parents;
            char* end = nullptr;
            const long long at = std::strtoll(fields[4].c_str(), &end, 10);
            if (end == nullptr || *end != '\0')
                throw MalformedNumstat("unparseable author timestamp: " + line);
            current.sha = fields[0];
            current.repo = repo_slug;
            current.author_name = fields[2];
            current.author_email = fields[3];
            current.timestamp = static_cast<UnixTime>(at);
            have_current = true;
            skip_current = !include_merges && parents >= 2;
            continue;
        }
        const std::size_t tab1 = line.find('\t');
        const std::size_t tab2 = tab1 == std::string::npos ? std::string::npos
                                                           : line.find('\t', tab1 + 1);
        if (!have_current || tab2 == std::string::npos)
            throw MalformedNumstat("unparseable numstat line: " + line);
        const std::string added = line.substr(0, tab1);
        const std::string deleted = line.substr(tab1 + 1, tab2 - tab1 - 1);
        FileChange change;
        change.path = line.substr(tab2 + 1);
        if (change.path.empty())
            throw MalformedNumstat("numstat line without a path: " + line);
        if (added == "-" && deleted == "-") {
            change.binary = true;
        } else if (all_digits(added) && all_digits(deleted)) {
            change.additions = std::atoll(added.c_str());
            change.deletions = std::atoll(deleted.c_str());
        } else {
            throw MalformedNumstat("unparseable numstat line: " + line);
        }
        if (!skip_current) current.changes.push_back(std::move(change));
    }
    flush();
    return commits;
}

}  // namespace detail

std::vector<CommitRecord> extract_from_git(const std::string& repo_path,
                                           const std::string& repo_slug,
                                           bool include_merges) {
    using detail::run_command;
    using detail::shell_quote;

    const std::string git = "git -C " + shell_quote(repo_path);
    const auto probe = run_command(git + " rev-parse --git-dir");
    if (probe.exit_code != 0)
        throw RepoNotFound(repo_path + " is not a git repository: " + probe.err);

    const auto head = run_command(git + " rev-parse --verify -q HEAD");
    if (head.exit_code != 0) return {};  // repository exists but has no commits

    const std::string format = std::string(1, '\x1e') + "%H" + '\x1f' + "%P" + '\x1f' +
                               "%an" + '\x1f' + "%ae" + '\x1f' + "%at";
    const auto log = run_command(git + " -c core.quotepath=off log --no-renames --numstat"
                                       " --pretty=format:" + shell_quote(format) + " HEAD");
    if (log.exit_code != 0)
        throw GitInvocationFailed("git log failed for " + repo_path + ": " + log.err);
    return detail::parse_numstat_log(log.out, repo_slug, include_merges);
}

}  // namespace orgcoupling
